#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <variant>

namespace bsq::expr {

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class Function { Neg, Exp, Sech, Tanh, Sin, Sec, Sqrt };

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct Constant {
    double value;
};
struct Variable {}; // the single free variable x

struct Unary {
    Function fn;
    NodePtr arg;
};

struct Binary {
    BinaryOp op;
    NodePtr lhs;
    NodePtr rhs;
};

struct Node {
    std::variant<Constant, Variable, Unary, Binary> v;
};

/// Immutable expression tree over one variable x. Copies share nodes, so the
/// type has cheap value semantics and is safe for concurrent evaluation.
class Ast {
public:
    Ast() = default;
    explicit Ast(NodePtr root) : root_(std::move(root)) {}

    bool empty() const noexcept { return root_ == nullptr; }
    const NodePtr& root() const noexcept { return root_; }

    /// Evaluate at x. Throws DomainError when the result is not finite
    /// (division blow-up, sqrt of a negative number, ...).
    double eval(double x) const;

    /// Render with minimal parentheses; parse(str()) reproduces the tree.
    std::string str() const;

    /// Structural equality.
    bool same(const Ast& other) const;

private:
    NodePtr root_;
};

/// Parse an arithmetic expression in x with functions
/// exp, sech, tanh, sin, sec, sqrt. Precedence: ^ > unary minus > *,/ > +,-;
/// '^' associates to the right, everything else to the left.
/// Throws ParseError with the byte offset of the offending character.
Ast parse(std::string_view text);

} // namespace bsq::expr

namespace bsq {
/// Spec-facing alias for expr::parse.
inline expr::Ast parse_expression(std::string_view text) { return expr::parse(text); }
} // namespace bsq
