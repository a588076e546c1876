#include "bsq/expression.hpp"

#include "bsq/errors.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace bsq::expr {

namespace {

double apply_function(Function fn, double v) {
    switch (fn) {
    case Function::Neg: return -v;
    case Function::Exp: return std::exp(v);
    case Function::Sech: return 1.0 / std::cosh(v);
    case Function::Tanh: return std::tanh(v);
    case Function::Sin: return std::sin(v);
    case Function::Sec: return 1.0 / std::cos(v);
    case Function::Sqrt: return std::sqrt(v);
    }
    return 0.0; // unreachable
}

const char* function_name(Function fn) {
    switch (fn) {
    case Function::Neg: return "-";
    case Function::Exp: return "exp";
    case Function::Sech: return "sech";
    case Function::Tanh: return "tanh";
    case Function::Sin: return "sin";
    case Function::Sec: return "sec";
    case Function::Sqrt: return "sqrt";
    }
    return "?";
}

double eval_node(const Node& n, double x) {
    struct Visitor {
        double x;
        double operator()(const Constant& c) const { return c.value; }
        double operator()(const Variable&) const { return x; }
        double operator()(const Unary& u) const {
            return apply_function(u.fn, eval_node(*u.arg, x));
        }
        double operator()(const Binary& b) const {
            const double l = eval_node(*b.lhs, x);
            const double r = eval_node(*b.rhs, x);
            switch (b.op) {
            case BinaryOp::Add: return l + r;
            case BinaryOp::Sub: return l - r;
            case BinaryOp::Mul: return l * r;
            case BinaryOp::Div: return l / r;
            case BinaryOp::Pow: return std::pow(l, r);
            }
            return 0.0;
        }
    };
    return std::visit(Visitor{x}, n.v);
}

// Printing precedence levels; higher binds tighter.
int precedence_of(const Node& n) {
    struct Visitor {
        int operator()(const Constant& c) const { return c.value < 0 ? 2 : 5; }
        int operator()(const Variable&) const { return 5; }
        int operator()(const Unary& u) const { return u.fn == Function::Neg ? 2 : 5; }
        int operator()(const Binary& b) const {
            switch (b.op) {
            case BinaryOp::Add:
            case BinaryOp::Sub: return 0;
            case BinaryOp::Mul:
            case BinaryOp::Div: return 1;
            case BinaryOp::Pow: return 3;
            }
            return 0;
        }
    };
    return std::visit(Visitor{}, n.v);
}

void print_node(std::ostream& os, const Node& n);

void print_child(std::ostream& os, const Node& child, int parentPrec, bool tightSide) {
    const int childPrec = precedence_of(child);
    const bool parens = childPrec < parentPrec || (tightSide && childPrec == parentPrec);
    if (parens) os << '(';
    print_node(os, child);
    if (parens) os << ')';
}

void print_node(std::ostream& os, const Node& n) {
    struct Visitor {
        std::ostream& os;
        void operator()(const Constant& c) const {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", c.value);
            os << buf;
        }
        void operator()(const Variable&) const { os << 'x'; }
        void operator()(const Unary& u) const {
            if (u.fn == Function::Neg) {
                os << '-';
                print_child(os, *u.arg, 2, true); // -(a+b) keeps parens, -x^2 does not
            } else {
                os << function_name(u.fn) << '(';
                print_node(os, *u.arg);
                os << ')';
            }
        }
        void operator()(const Binary& b) const {
            const char* op = nullptr;
            int prec = 0;
            switch (b.op) {
            case BinaryOp::Add: op = " + "; prec = 0; break;
            case BinaryOp::Sub: op = " - "; prec = 0; break;
            case BinaryOp::Mul: op = "*"; prec = 1; break;
            case BinaryOp::Div: op = "/"; prec = 1; break;
            case BinaryOp::Pow: op = "^"; prec = 3; break;
            }
            // the loose side of an associative chain keeps equal-precedence
            // children bare; the tight side needs parens
            const bool rightAssoc = b.op == BinaryOp::Pow;
            print_child(os, *b.lhs, prec, rightAssoc);
            os << op;
            print_child(os, *b.rhs, prec, !rightAssoc);
        }
    };
    std::visit(Visitor{os}, n.v);
}

bool same_node(const Node& a, const Node& b) {
    if (a.v.index() != b.v.index())
        return false;
    if (const auto* ca = std::get_if<Constant>(&a.v))
        return ca->value == std::get<Constant>(b.v).value;
    if (std::holds_alternative<Variable>(a.v))
        return true;
    if (const auto* ua = std::get_if<Unary>(&a.v)) {
        const auto& ub = std::get<Unary>(b.v);
        return ua->fn == ub.fn && same_node(*ua->arg, *ub.arg);
    }
    const auto& ba = std::get<Binary>(a.v);
    const auto& bb = std::get<Binary>(b.v);
    return ba.op == bb.op && same_node(*ba.lhs, *bb.lhs) && same_node(*ba.rhs, *bb.rhs);
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Ast run() {
        if (text_.find_first_not_of(" \t\r\n") == std::string_view::npos)
            throw ParseError("empty expression", 0);
        NodePtr root = parse_sum();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected trailing input");
        return Ast(std::move(root));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        std::ostringstream os;
        os << msg << " at byte " << pos_;
        throw ParseError(os.str(), pos_);
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool consume(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    int peek() {
        skip_space();
        return pos_ < text_.size() ? static_cast<unsigned char>(text_[pos_]) : -1;
    }

    NodePtr parse_sum() {
        NodePtr lhs = parse_product();
        for (;;) {
            if (consume('+'))
                lhs = make_binary(BinaryOp::Add, std::move(lhs), parse_product());
            else if (consume('-'))
                lhs = make_binary(BinaryOp::Sub, std::move(lhs), parse_product());
            else
                return lhs;
        }
    }

    NodePtr parse_product() {
        NodePtr lhs = parse_unary();
        for (;;) {
            if (consume('*'))
                lhs = make_binary(BinaryOp::Mul, std::move(lhs), parse_unary());
            else if (consume('/'))
                lhs = make_binary(BinaryOp::Div, std::move(lhs), parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (consume('-'))
            return std::make_shared<Node>(Node{Unary{Function::Neg, parse_unary()}});
        return parse_power();
    }

    NodePtr parse_power() {
        NodePtr base = parse_atom();
        if (consume('^')) {
            // right-associative; exponent may start with a unary minus
            return make_binary(BinaryOp::Pow, std::move(base), parse_unary());
        }
        return base;
    }

    NodePtr parse_atom() {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr inner = parse_sum();
            if (!consume(')'))
                fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.')
            return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)))
            return parse_identifier();
        fail("unexpected character");
    }

    NodePtr parse_number() {
        // scan the token first; the view is not necessarily null-terminated
        std::size_t end = pos_;
        auto at = [&](std::size_t i) { return i < text_.size() ? text_[i] : '\0'; };
        while (std::isdigit(static_cast<unsigned char>(at(end))) || at(end) == '.')
            ++end;
        if (at(end) == 'e' || at(end) == 'E') {
            std::size_t expEnd = end + 1;
            if (at(expEnd) == '+' || at(expEnd) == '-')
                ++expEnd;
            if (std::isdigit(static_cast<unsigned char>(at(expEnd)))) {
                ++expEnd;
                while (std::isdigit(static_cast<unsigned char>(at(expEnd))))
                    ++expEnd;
                end = expEnd;
            }
        }
        const std::string token(text_.substr(pos_, end - pos_));
        char* parsed = nullptr;
        const double value = std::strtod(token.c_str(), &parsed);
        if (parsed != token.c_str() + token.size())
            fail("malformed number");
        pos_ = end;
        return std::make_shared<Node>(Node{Constant{value}});
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               std::isalpha(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "x")
            return std::make_shared<Node>(Node{Variable{}});

        Function fn;
        if (name == "exp") fn = Function::Exp;
        else if (name == "sech") fn = Function::Sech;
        else if (name == "tanh") fn = Function::Tanh;
        else if (name == "sin") fn = Function::Sin;
        else if (name == "sec") fn = Function::Sec;
        else if (name == "sqrt") fn = Function::Sqrt;
        else {
            pos_ = start;
            fail("unknown identifier '" + std::string(name) + "'");
        }
        if (!consume('('))
            fail("expected '(' after function name");
        NodePtr arg = parse_sum();
        if (!consume(')'))
            fail("expected ')'");
        return std::make_shared<Node>(Node{Unary{fn, std::move(arg)}});
    }

    static NodePtr make_binary(BinaryOp op, NodePtr lhs, NodePtr rhs) {
        return std::make_shared<Node>(Node{Binary{op, std::move(lhs), std::move(rhs)}});
    }
};

} // namespace

double Ast::eval(double x) const {
    if (!root_)
        throw DomainError("expression: empty AST");
    const double v = eval_node(*root_, x);
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "expression: evaluation not finite at x = " << x;
        throw DomainError(os.str());
    }
    return v;
}

std::string Ast::str() const {
    if (!root_)
        return "";
    std::ostringstream os;
    print_node(os, *root_);
    return os.str();
}

bool Ast::same(const Ast& other) const {
    if (!root_ || !other.root_)
        return root_ == other.root_;
    return same_node(*root_, *other.root_);
}

Ast parse(std::string_view text) { return Parser(text).run(); }

} // namespace bsq::expr
