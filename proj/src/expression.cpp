#include "qfho/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "qfho/errors.hpp"

namespace qfho {

bool is_unary(NodeKind kind) noexcept {
    switch (kind) {
        case NodeKind::Neg:
        case NodeKind::Sin:
        case NodeKind::Cos:
        case NodeKind::Exp:
        case NodeKind::Sqrt:
            return true;
        default:
            return false;
    }
}

bool is_binary(NodeKind kind) noexcept {
    switch (kind) {
        case NodeKind::Add:
        case NodeKind::Sub:
        case NodeKind::Mul:
        case NodeKind::Div:
        case NodeKind::Pow:
            return true;
        default:
            return false;
    }
}

Expression Expression::constant(double value) {
    if (!std::isfinite(value)) throw InvalidArgument("expression constant must be finite");
    auto node = std::make_shared<ExpressionNode>();
    node->kind = NodeKind::Constant;
    node->value = value;
    return Expression(std::move(node));
}

Expression Expression::variable() {
    auto node = std::make_shared<ExpressionNode>();
    node->kind = NodeKind::Variable;
    return Expression(std::move(node));
}

Expression Expression::unary(NodeKind kind, Expression operand) {
    if (!is_unary(kind)) throw InvalidArgument("not a unary node kind");
    auto node = std::make_shared<ExpressionNode>();
    node->kind = kind;
    node->lhs = std::move(operand.root_);
    return Expression(std::move(node));
}

Expression Expression::binary(NodeKind kind, Expression lhs, Expression rhs) {
    if (!is_binary(kind)) throw InvalidArgument("not a binary node kind");
    auto node = std::make_shared<ExpressionNode>();
    node->kind = kind;
    node->lhs = std::move(lhs.root_);
    node->rhs = std::move(rhs.root_);
    return Expression(std::move(node));
}

namespace {

double checked(double value, double t, const char* what) {
    if (!std::isfinite(value)) throw EvalDomainError(t, std::string("non-finite result in ") + what);
    return value;
}

double eval_node(const ExpressionNode& node, double t) {
    switch (node.kind) {
        case NodeKind::Constant:
            return node.value;
        case NodeKind::Variable:
            return t;
        case NodeKind::Neg:
            return -eval_node(*node.lhs, t);
        case NodeKind::Sin:
            return checked(std::sin(eval_node(*node.lhs, t)), t, "sin");
        case NodeKind::Cos:
            return checked(std::cos(eval_node(*node.lhs, t)), t, "cos");
        case NodeKind::Exp:
            return checked(std::exp(eval_node(*node.lhs, t)), t, "exp");
        case NodeKind::Sqrt: {
            const double x = eval_node(*node.lhs, t);
            if (x < 0.0) throw EvalDomainError(t, "sqrt of a negative number");
            return std::sqrt(x);
        }
        case NodeKind::Add:
            return checked(eval_node(*node.lhs, t) + eval_node(*node.rhs, t), t, "+");
        case NodeKind::Sub:
            return checked(eval_node(*node.lhs, t) - eval_node(*node.rhs, t), t, "-");
        case NodeKind::Mul:
            return checked(eval_node(*node.lhs, t) * eval_node(*node.rhs, t), t, "*");
        case NodeKind::Div:
            return checked(eval_node(*node.lhs, t) / eval_node(*node.rhs, t), t, "/");
        case NodeKind::Pow:
            return checked(std::pow(eval_node(*node.lhs, t), eval_node(*node.rhs, t)), t, "^");
    }
    throw Error("corrupt expression node");
}

const char* function_name(NodeKind kind) {
    switch (kind) {
        case NodeKind::Sin: return "sin";
        case NodeKind::Cos: return "cos";
        case NodeKind::Exp: return "exp";
        case NodeKind::Sqrt: return "sqrt";
        default: return nullptr;
    }
}

char binary_symbol(NodeKind kind) {
    switch (kind) {
        case NodeKind::Add: return '+';
        case NodeKind::Sub: return '-';
        case NodeKind::Mul: return '*';
        case NodeKind::Div: return '/';
        case NodeKind::Pow: return '^';
        default: return '?';
    }
}

void render_node(const ExpressionNode& node, std::string& out) {
    switch (node.kind) {
        case NodeKind::Constant:
            // fmt's default is the shortest text that round-trips exactly.
            if (std::signbit(node.value))
                out += fmt::format("(-{})", -node.value);
            else
                out += fmt::format("{}", node.value);
            return;
        case NodeKind::Variable:
            out += 't';
            return;
        case NodeKind::Neg:
            out += "(-";
            render_node(*node.lhs, out);
            out += ')';
            return;
        default:
            break;
    }
    if (const char* name = function_name(node.kind)) {
        out += name;
        out += '(';
        render_node(*node.lhs, out);
        out += ')';
        return;
    }
    out += '(';
    render_node(*node.lhs, out);
    out += ' ';
    out += binary_symbol(node.kind);
    out += ' ';
    render_node(*node.rhs, out);
    out += ')';
}

// expr  := term (('+'|'-') term)*
// term  := unary (('*'|'/') unary)*
// unary := '-' unary | power
// power := atom ('^' unary)?
// atom  := number | 't' | func '(' expr ')' | '(' expr ')'
class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Expression parse() {
        Expression result = expr();
        skip_space();
        if (!at_end()) throw SyntaxError(pos_, fmt::format("unexpected '{}'", text_[pos_]));
        return result;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (!at_end() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    [[noreturn]] void unexpected(const char* expected) const {
        if (at_end()) throw SyntaxError(pos_, fmt::format("unexpected end of input, expected {}", expected));
        throw SyntaxError(pos_, fmt::format("unexpected '{}', expected {}", text_[pos_], expected));
    }

    Expression expr() {
        Expression lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = Expression::binary(NodeKind::Add, std::move(lhs), term());
            else if (accept('-'))
                lhs = Expression::binary(NodeKind::Sub, std::move(lhs), term());
            else
                return lhs;
        }
    }

    Expression term() {
        Expression lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = Expression::binary(NodeKind::Mul, std::move(lhs), unary());
            else if (accept('/'))
                lhs = Expression::binary(NodeKind::Div, std::move(lhs), unary());
            else
                return lhs;
        }
    }

    Expression unary() {
        if (accept('-')) return Expression::unary(NodeKind::Neg, unary());
        return power();
    }

    Expression power() {
        Expression base = atom();
        if (accept('^')) return Expression::binary(NodeKind::Pow, std::move(base), unary());
        return base;
    }

    Expression atom() {
        skip_space();
        if (at_end()) unexpected("a number, 't', a function or '('");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            Expression inner = expr();
            if (!accept(')')) unexpected("')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        unexpected("a number, 't', a function or '('");
    }

    Expression number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            std::size_t n = 0;
            while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t mantissa = digits();
        if (!at_end() && text_[pos_] == '.') {
            ++pos_;
            mantissa += digits();
        }
        if (mantissa == 0) throw SyntaxError(start, "malformed number");
        if (!at_end() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t exp_pos = pos_;
            ++pos_;
            if (!at_end() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) throw SyntaxError(exp_pos, "malformed exponent");
        }
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_ || !std::isfinite(value))
            throw SyntaxError(start, "number out of range");
        return Expression::constant(value);
    }

    Expression identifier() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "t") return Expression::variable();

        NodeKind kind;
        if (name == "sin")
            kind = NodeKind::Sin;
        else if (name == "cos")
            kind = NodeKind::Cos;
        else if (name == "exp")
            kind = NodeKind::Exp;
        else if (name == "sqrt")
            kind = NodeKind::Sqrt;
        else
            throw UnknownIdentifier(std::string(name), start);

        if (!accept('(')) unexpected("'('");
        Expression argument = expr();
        if (!accept(')')) unexpected("')'");
        return Expression::unary(kind, std::move(argument));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

double Expression::evaluate(double t) const { return eval_node(*root_, t); }

std::string Expression::render() const {
    std::string out;
    render_node(*root_, out);
    return out;
}

Expression parse_force_expression(std::string_view text) { return Parser(text).parse(); }

}  // namespace qfho
