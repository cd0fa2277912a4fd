#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace qfho {

enum class NodeKind {
    Constant,
    Variable,
    // unary
    Neg,
    Sin,
    Cos,
    Exp,
    Sqrt,
    // binary
    Add,
    Sub,
    Mul,
    Div,
    Pow,
};

bool is_unary(NodeKind kind) noexcept;
bool is_binary(NodeKind kind) noexcept;

struct ExpressionNode {
    NodeKind kind = NodeKind::Constant;
    double value = 0.0;  // Constant only
    std::shared_ptr<const ExpressionNode> lhs;
    std::shared_ptr<const ExpressionNode> rhs;
};

/// Immutable expression tree in the single free variable t.
///
/// Nodes are shared, so copies are cheap and safe to evaluate from several
/// threads at once. Every factory enforces full arity, which makes a
/// constructed Expression well formed by construction.
class Expression {
public:
    static Expression constant(double value);
    static Expression variable();
    static Expression unary(NodeKind kind, Expression operand);
    static Expression binary(NodeKind kind, Expression lhs, Expression rhs);

    /// Evaluates at t. Throws EvalDomainError on sqrt of a negative number or
    /// when any intermediate value is not finite.
    double evaluate(double t) const;
    double operator()(double t) const { return evaluate(t); }

    /// Fully parenthesized infix text that parses back to an identical tree.
    std::string render() const;

    const ExpressionNode& root() const noexcept { return *root_; }

private:
    explicit Expression(std::shared_ptr<const ExpressionNode> root) : root_(std::move(root)) {}

    std::shared_ptr<const ExpressionNode> root_;
};

/// Parses infix arithmetic in t.
///
/// Precedence, tightest first: function call and parentheses, `^` (right
/// associative), unary minus, `*` `/`, `+` `-`. So `-2^2` is -4 and `2^-1` is
/// 0.5. Literals are decimal with an optional exponent. Recognized functions
/// are sin, cos, exp and sqrt.
///
/// Throws SyntaxError with a 0-based byte offset, or UnknownIdentifier.
Expression parse_force_expression(std::string_view text);

}  // namespace qfho
