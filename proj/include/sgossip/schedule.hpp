#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

namespace sgossip {

/// Per-step gain sequence: a constant, an explicit table (last entry held
/// past the end) or the closed form scale / (k + offset)^exponent.
class GainSequence {
public:
    struct Constant { double value; };
    struct Table { std::vector<double> values; };
    struct Power { double scale; double offset; double exponent; };

    GainSequence() : rule_(Constant{0.0}) {}

    static GainSequence constant(double value) { return GainSequence(Constant{value}); }
    static GainSequence table(std::vector<double> values);
    static GainSequence power(double scale, double offset, double exponent);

    /// Accepts "0.5", "table:0.1,0.2,0.3", "harmonic:SCALE,OFFSET" and
    /// "power:SCALE,OFFSET,EXPONENT". Throws std::invalid_argument.
    static GainSequence parse(const std::string& spec);

    double operator()(std::size_t k) const;
    bool is_constant() const;
    /// sup_k value(k); +inf when unbounded.
    double supremum() const;
    std::string describe() const;

private:
    explicit GainSequence(std::variant<Constant, Table, Power> rule) : rule_(std::move(rule)) {}
    std::variant<Constant, Table, Power> rule_;
};

/// Attraction gains alpha_k in [0,1] and repulsion gains beta_k >= 0.
struct Schedule {
    GainSequence alpha;
    GainSequence beta;

    static Schedule constant(double a, double b) {
        return {GainSequence::constant(a), GainSequence::constant(b)};
    }

    /// Checked accessors; throw GainRangeError when out of range.
    double alpha_at(std::size_t k) const;
    double beta_at(std::size_t k) const;

    bool is_constant() const { return alpha.is_constant() && beta.is_constant(); }
    bool beta_bounded() const;
};

/// Throws GainRangeError unless 0 <= alpha <= 1 and beta >= 0 (both finite).
void check_gains(double alpha, double beta);

}  // namespace sgossip
