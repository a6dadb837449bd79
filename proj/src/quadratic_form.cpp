#include "ncm/quadratic_form.hpp"

#include "ncm/errors.hpp"

namespace ncm {

QuadraticForm::QuadraticForm(FieldTag field, std::vector<QSqrt2> coefficients)
    : field_(field), coefficients_(std::move(coefficients)) {
    require(!coefficients_.empty(), "quadratic form needs at least one coefficient");
    for (const auto& c : coefficients_) {
        require(!c.is_zero(), "quadratic form coefficients must be nonzero");
        require(field_ == FieldTag::q_sqrt2 || c.is_rational(),
                "coefficient " + to_string(c) + " is not rational");
    }
}

QuadraticForm QuadraticForm::over_q(const std::vector<Rational>& coefficients) {
    std::vector<QSqrt2> cs(coefficients.begin(), coefficients.end());
    return {FieldTag::rational, std::move(cs)};
}

std::vector<Rational> QuadraticForm::rational_coefficients() const {
    require(field_ == FieldTag::rational, "form is not defined over Q");
    std::vector<Rational> out;
    out.reserve(coefficients_.size());
    for (const auto& c : coefficients_) out.push_back(c.rational_part());
    return out;
}

std::pair<int, int> QuadraticForm::signature(bool conjugate_embedding) const {
    int pos = 0;
    int neg = 0;
    for (const auto& c : coefficients_) {
        (c.real_sign(conjugate_embedding) > 0 ? pos : neg) += 1;
    }
    return {pos, neg};
}

QSqrt2 QuadraticForm::evaluate(const std::vector<Integer>& x) const {
    require(x.size() == rank(), "vector length does not match rank");
    QSqrt2 sum;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += coefficients_[i] * QSqrt2(Rational(x[i] * x[i]));
    }
    return sum;
}

QuadraticForm QuadraticForm::scaled(const QSqrt2& lambda) const {
    require(!lambda.is_zero(), "scaling by zero");
    require(field_ == FieldTag::q_sqrt2 || lambda.is_rational(), "irrational scalar for a form over Q");
    std::vector<QSqrt2> cs;
    cs.reserve(coefficients_.size());
    for (const auto& c : coefficients_) cs.push_back(c * lambda);
    return {field_, std::move(cs)};
}

std::string to_string(const QuadraticForm& form) {
    std::string s = "<";
    for (std::size_t i = 0; i < form.rank(); ++i) {
        if (i) s += ", ";
        s += to_string(form.coefficients()[i]);
    }
    return s + ">";
}

}  // namespace ncm
