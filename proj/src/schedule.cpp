#include "sgossip/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "sgossip/errors.hpp"

namespace sgossip {

namespace {

std::vector<double> parse_numbers(const std::string& text) {
    std::vector<double> values;
    std::stringstream ss(text);
    ss.imbue(std::locale::classic());
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + item + "'");
        }
        if (used != item.size()) throw std::invalid_argument("not a number: '" + item + "'");
        values.push_back(v);
    }
    return values;
}

}  // namespace

GainSequence GainSequence::table(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("gain table is empty");
    return GainSequence(Table{std::move(values)});
}

GainSequence GainSequence::power(double scale, double offset, double exponent) {
    if (!(offset > 0.0)) throw std::invalid_argument("power gain offset must be positive");
    return GainSequence(Power{scale, offset, exponent});
}

GainSequence GainSequence::parse(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        const auto v = parse_numbers(spec);
        if (v.size() != 1) throw std::invalid_argument("expected a single gain value: " + spec);
        return constant(v[0]);
    }
    const std::string kind = spec.substr(0, colon);
    const auto args = parse_numbers(spec.substr(colon + 1));
    if (kind == "table") return table(args);
    if (kind == "harmonic" && args.size() == 2) return power(args[0], args[1], 1.0);
    if (kind == "power" && args.size() == 3) return power(args[0], args[1], args[2]);
    throw std::invalid_argument("unknown gain schedule: " + spec);
}

double GainSequence::operator()(std::size_t k) const {
    if (const auto* c = std::get_if<Constant>(&rule_)) return c->value;
    if (const auto* t = std::get_if<Table>(&rule_)) {
        return k < t->values.size() ? t->values[k] : t->values.back();
    }
    const auto& p = std::get<Power>(rule_);
    return p.scale / std::pow(static_cast<double>(k) + p.offset, p.exponent);
}

bool GainSequence::is_constant() const {
    if (std::holds_alternative<Constant>(rule_)) return true;
    if (const auto* p = std::get_if<Power>(&rule_)) return p->exponent == 0.0 || p->scale == 0.0;
    const auto& values = std::get<Table>(rule_).values;
    for (double v : values) {
        if (v != values.front()) return false;
    }
    return true;
}

double GainSequence::supremum() const {
    if (const auto* c = std::get_if<Constant>(&rule_)) return c->value;
    if (const auto* t = std::get_if<Table>(&rule_)) {
        double m = -std::numeric_limits<double>::infinity();
        for (double v : t->values) m = std::max(m, v);
        return m;
    }
    const auto& p = std::get<Power>(rule_);
    if (p.exponent < 0.0 && p.scale > 0.0) return std::numeric_limits<double>::infinity();
    return std::max(p.scale / std::pow(p.offset, p.exponent), 0.0);
}

std::string GainSequence::describe() const {
    std::ostringstream os;
    os.imbue(std::locale::classic());
    os.precision(17);
    if (const auto* c = std::get_if<Constant>(&rule_)) {
        os << c->value;
    } else if (const auto* t = std::get_if<Table>(&rule_)) {
        os << "table:";
        for (std::size_t i = 0; i < t->values.size(); ++i) os << (i ? "," : "") << t->values[i];
    } else {
        const auto& p = std::get<Power>(rule_);
        os << "power:" << p.scale << "," << p.offset << "," << p.exponent;
    }
    return os.str();
}

double Schedule::alpha_at(std::size_t k) const {
    const double a = alpha(k);
    if (!(a >= 0.0 && a <= 1.0)) {
        throw GainRangeError("alpha_" + std::to_string(k) + " = " + std::to_string(a) +
                             " outside [0,1]");
    }
    return a;
}

double Schedule::beta_at(std::size_t k) const {
    const double b = beta(k);
    if (!(b >= 0.0) || !std::isfinite(b)) {
        throw GainRangeError("beta_" + std::to_string(k) + " = " + std::to_string(b) +
                             " must be finite and non-negative");
    }
    return b;
}

bool Schedule::beta_bounded() const {
    return std::isfinite(beta.supremum());
}

void check_gains(double alpha, double beta) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw GainRangeError("alpha = " + std::to_string(alpha) + " outside [0,1]");
    }
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        throw GainRangeError("beta = " + std::to_string(beta) + " must be finite and non-negative");
    }
}

}  // namespace sgossip
