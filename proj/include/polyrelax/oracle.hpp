#pragma once

#include <memory>
#include <string>
#include <utility>

#include "polyrelax/domain.hpp"
#include "polyrelax/expr.hpp"

namespace polyrelax {

// Provider of f(x) and f'(x). Deterministic: same input, same output bit
// pattern within a process run.
class FunctionOracle {
public:
    virtual ~FunctionOracle() = default;

    virtual double value(double x) const = 0;
    virtual double derivative(double x) const = 0;
    virtual Domain domain_hint() const = 0;

    // Human-readable definition, used in exported model metadata.
    virtual std::string description() const = 0;
};

// Oracle backed by a parsed expression, differentiated with dual numbers.
class ExprOracle final : public FunctionOracle {
public:
    ExprOracle(ExprPtr ast, Domain dom, std::string text)
        : ast_(std::move(ast)), dom_(dom), text_(std::move(text)) {}

    double value(double x) const override { return eval_dual(ast_, x).val; }
    double derivative(double x) const override { return eval_dual(ast_, x).der; }
    Domain domain_hint() const override { return dom_; }
    std::string description() const override { return text_; }

    const ExprPtr& ast() const noexcept { return ast_; }

private:
    ExprPtr ast_;
    Domain dom_;
    std::string text_;
};

inline std::shared_ptr<const FunctionOracle>
make_expr_oracle(const std::string& text, Domain dom) {
    return std::make_shared<ExprOracle>(parse_expression(text), dom, text);
}

} // namespace polyrelax
