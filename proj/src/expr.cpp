#include "switchsim/expr.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <utility>

namespace switchsim {

namespace {

enum class Kind {
    Constant,
    Variable,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Neg,
    Sin,
    Cos,
    Exp,
    Log,
    Sqrt,
    Tanh,
    Abs,
    Min,
    Max,
};

bool is_binary(Kind k) {
    switch (k) {
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow:
        case Kind::Min:
        case Kind::Max:
            return true;
        default:
            return false;
    }
}

}  // namespace

struct Expression::Node {
    Kind kind = Kind::Constant;
    double value = 0.0;  // Kind::Constant
    int index = 0;       // Kind::Variable, zero-based
    std::vector<Node> kids;
};

namespace {

using Node = Expression::Node;

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

std::string format_literal(double v) {
    char buf[32];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, end);
}

const char* function_name(Kind k) {
    switch (k) {
        case Kind::Sin: return "sin";
        case Kind::Cos: return "cos";
        case Kind::Exp: return "exp";
        case Kind::Log: return "log";
        case Kind::Sqrt: return "sqrt";
        case Kind::Tanh: return "tanh";
        case Kind::Abs: return "abs";
        case Kind::Min: return "min";
        case Kind::Max: return "max";
        default: return "?";
    }
}

void print_node(const Node& n, std::string& out) {
    switch (n.kind) {
        case Kind::Constant:
            out += format_literal(n.value);
            return;
        case Kind::Variable:
            out += "x" + std::to_string(n.index + 1);
            return;
        case Kind::Neg:
            out += "(-";
            print_node(n.kids[0], out);
            out += ")";
            return;
        case Kind::Add:
        case Kind::Sub:
        case Kind::Mul:
        case Kind::Div:
        case Kind::Pow: {
            const char op = n.kind == Kind::Add   ? '+'
                            : n.kind == Kind::Sub ? '-'
                            : n.kind == Kind::Mul ? '*'
                            : n.kind == Kind::Div ? '/'
                                                  : '^';
            out += "(";
            print_node(n.kids[0], out);
            out += ' ';
            out += op;
            out += ' ';
            print_node(n.kids[1], out);
            out += ")";
            return;
        }
        case Kind::Min:
        case Kind::Max:
            out += function_name(n.kind);
            out += "(";
            print_node(n.kids[0], out);
            out += ", ";
            print_node(n.kids[1], out);
            out += ")";
            return;
        default:
            out += function_name(n.kind);
            out += "(";
            print_node(n.kids[0], out);
            out += ")";
            return;
    }
}

std::string to_text(const Node& n) {
    std::string s;
    print_node(n, s);
    return s;
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

[[noreturn]] void domain_error(const char* what, const Node& n) {
    throw EvalError(what, to_text(n));
}

double check_finite(double v, const Node& n) {
    if (!std::isfinite(v)) domain_error("non-finite result", n);
    return v;
}

double eval_node(const Node& n, std::span<const double> x) {
    switch (n.kind) {
        case Kind::Constant:
            return n.value;
        case Kind::Variable:
            return x[static_cast<std::size_t>(n.index)];
        case Kind::Add:
            return check_finite(eval_node(n.kids[0], x) + eval_node(n.kids[1], x), n);
        case Kind::Sub:
            return check_finite(eval_node(n.kids[0], x) - eval_node(n.kids[1], x), n);
        case Kind::Mul:
            return check_finite(eval_node(n.kids[0], x) * eval_node(n.kids[1], x), n);
        case Kind::Div: {
            const double b = eval_node(n.kids[1], x);
            if (b == 0.0) domain_error("division by zero", n);
            return check_finite(eval_node(n.kids[0], x) / b, n);
        }
        case Kind::Pow: {
            const double a = eval_node(n.kids[0], x);
            const double b = eval_node(n.kids[1], x);
            if (a < 0.0 && b != std::floor(b))
                domain_error("negative base with non-integer exponent", n);
            if (a == 0.0 && b < 0.0) domain_error("zero base with negative exponent", n);
            return check_finite(std::pow(a, b), n);
        }
        case Kind::Neg:
            return -eval_node(n.kids[0], x);
        case Kind::Sin:
            return std::sin(eval_node(n.kids[0], x));
        case Kind::Cos:
            return std::cos(eval_node(n.kids[0], x));
        case Kind::Exp:
            return check_finite(std::exp(eval_node(n.kids[0], x)), n);
        case Kind::Log: {
            const double a = eval_node(n.kids[0], x);
            if (a <= 0.0) domain_error("log of nonpositive value", n);
            return check_finite(std::log(a), n);
        }
        case Kind::Sqrt: {
            const double a = eval_node(n.kids[0], x);
            if (a < 0.0) domain_error("sqrt of negative value", n);
            return std::sqrt(a);
        }
        case Kind::Tanh:
            return std::tanh(eval_node(n.kids[0], x));
        case Kind::Abs:
            return std::abs(eval_node(n.kids[0], x));
        case Kind::Min:
            return std::min(eval_node(n.kids[0], x), eval_node(n.kids[1], x));
        case Kind::Max:
            return std::max(eval_node(n.kids[0], x), eval_node(n.kids[1], x));
    }
    domain_error("corrupt expression node", n);
}

// ---------------------------------------------------------------------------
// Parsing: recursive descent.
//
//   expression := term (('+'|'-') term)*
//   term       := factor (('*'|'/') factor)*
//   factor     := '-' factor | power
//   power      := atom ('^' factor)?
//   atom       := NUMBER | IDENT | IDENT '(' expression (',' expression)? ')'
//               | '(' expression ')'
//
// '^' recursing into factor makes it right-associative and allows a unary
// minus in the exponent while still binding tighter than unary minus on the
// base, so -x1^2 parses as -(x1^2).
// ---------------------------------------------------------------------------

class Parser {
public:
    Parser(std::string_view src, int dimension) : src_(src), dim_(dimension) {}

    Node run() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("empty expression", 0);
        Node n = expression();
        skip_ws();
        if (pos_ < src_.size())
            throw ParseError(std::string("unexpected character '") + src_[pos_] + "'", pos_);
        return n;
    }

private:
    Node expression() {
        Node lhs = term();
        for (;;) {
            skip_ws();
            if (consume('+')) {
                lhs = make(Kind::Add, std::move(lhs), term());
            } else if (consume('-')) {
                lhs = make(Kind::Sub, std::move(lhs), term());
            } else {
                return lhs;
            }
        }
    }

    Node term() {
        Node lhs = factor();
        for (;;) {
            skip_ws();
            if (consume('*')) {
                lhs = make(Kind::Mul, std::move(lhs), factor());
            } else if (consume('/')) {
                lhs = make(Kind::Div, std::move(lhs), factor());
            } else {
                return lhs;
            }
        }
    }

    Node factor() {
        skip_ws();
        if (consume('-')) {
            Node n;
            n.kind = Kind::Neg;
            n.kids.push_back(factor());
            return n;
        }
        return power();
    }

    Node power() {
        Node base = atom();
        skip_ws();
        if (consume('^')) return make(Kind::Pow, std::move(base), factor());
        return base;
    }

    Node atom() {
        skip_ws();
        if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
        const char c = src_[pos_];
        if (consume('(')) {
            Node n = expression();
            expect(')');
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    Node number() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isdigit(static_cast<unsigned char>(src_[end])) || src_[end] == '.'))
            ++end;
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
            if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
                ++e;
                while (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) ++e;
                end = e;
            }
        }
        double value = 0.0;
        const auto res = std::from_chars(src_.data() + start, src_.data() + end, value);
        if (res.ec != std::errc() || res.ptr != src_.data() + end)
            throw ParseError("malformed number", start);
        pos_ = end;
        Node n;
        n.kind = Kind::Constant;
        n.value = value;
        return n;
    }

    Node identifier() {
        const std::size_t start = pos_;
        std::size_t end = pos_;
        while (end < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
            ++end;
        const std::string_view name = src_.substr(start, end - start);
        pos_ = end;

        if (name.size() >= 2 && name[0] == 'x' &&
            std::all_of(name.begin() + 1, name.end(),
                        [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
            int index = 0;
            std::from_chars(name.data() + 1, name.data() + name.size(), index);
            if (index < 1 || index > dim_)
                throw ParseError("variable index out of range: " + std::string(name) +
                                     " (dimension " + std::to_string(dim_) + ")",
                                 start);
            Node n;
            n.kind = Kind::Variable;
            n.index = index - 1;
            return n;
        }

        static constexpr std::array<std::pair<std::string_view, Kind>, 9> kFunctions = {{
            {"sin", Kind::Sin},
            {"cos", Kind::Cos},
            {"exp", Kind::Exp},
            {"log", Kind::Log},
            {"sqrt", Kind::Sqrt},
            {"tanh", Kind::Tanh},
            {"abs", Kind::Abs},
            {"min", Kind::Min},
            {"max", Kind::Max},
        }};
        for (const auto& [fname, kind] : kFunctions) {
            if (name != fname) continue;
            skip_ws();
            expect('(');
            Node n;
            n.kind = kind;
            n.kids.push_back(expression());
            if (kind == Kind::Min || kind == Kind::Max) {
                skip_ws();
                expect(',');
                n.kids.push_back(expression());
            }
            skip_ws();
            expect(')');
            return n;
        }
        throw ParseError("unknown identifier '" + std::string(name) + "'", start);
    }

    static Node make(Kind k, Node lhs, Node rhs) {
        Node n;
        n.kind = k;
        n.kids.push_back(std::move(lhs));
        n.kids.push_back(std::move(rhs));
        return n;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }

    bool consume(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!consume(c))
            throw ParseError(std::string("expected '") + c + "'", pos_);
    }

    std::string_view src_;
    int dim_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : root_(std::make_shared<const Node>()), dimension_(0) {}

Expression::Expression(std::shared_ptr<const Node> root, int dimension)
    : root_(std::move(root)), dimension_(dimension) {}

double Expression::evaluate(std::span<const double> point) const {
    if (static_cast<int>(point.size()) != dimension_)
        throw std::invalid_argument("evaluate: point has dimension " +
                                    std::to_string(point.size()) + ", expected " +
                                    std::to_string(dimension_));
    return eval_node(*root_, point);
}

std::vector<double> Expression::gradient(std::span<const double> point, double step) const {
    if (step <= 0.0) throw std::invalid_argument("gradient step must be positive");
    std::vector<double> x(point.begin(), point.end());
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double hi = step * std::max(1.0, std::abs(x[i]));
        const double xi = x[i];
        x[i] = xi + hi;
        const double fp = evaluate(x);
        x[i] = xi - hi;
        const double fm = evaluate(x);
        x[i] = xi;
        g[i] = (fp - fm) / (2.0 * hi);
    }
    return g;
}

std::string Expression::to_string() const { return to_text(*root_); }

Expression parse_expression(std::string_view source, int dimension) {
    if (dimension < 0) throw std::invalid_argument("dimension must be nonnegative");
    Parser p(source, dimension);
    auto root = std::make_shared<Node>(p.run());
    return Expression(std::move(root), dimension);
}

}  // namespace switchsim
