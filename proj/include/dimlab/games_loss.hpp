#pragma once
#include "dimlab/errors.hpp"
#include "dimlab/rational.hpp"

namespace dimlab {

// identity, l_eps(x) = max(x - eps, 0), L_eps(x) = [x >= eps]
struct LossFunction {
    enum class Kind { Identity, TruncatedLinear, Threshold };
    Kind kind = Kind::Identity;
    Rat eps;

    static LossFunction identity() { return {Kind::Identity, Rat(0)}; }
    static LossFunction truncated(const Rat& eps) {
        require(eps > Rat(0) && eps <= Rat(1), "BadRange", "loss eps must lie in (0,1]");
        return {Kind::TruncatedLinear, eps};
    }
    static LossFunction threshold(const Rat& eps) {
        require(eps > Rat(0) && eps <= Rat(1), "BadRange", "loss eps must lie in (0,1]");
        return {Kind::Threshold, eps};
    }

    Rat eval(const Rat& x) const {
        require(x >= Rat(0) && x <= Rat(1), "OutOfRange", "loss argument outside [0,1]");
        switch (kind) {
            case Kind::Identity: return x;
            case Kind::TruncatedLinear: return max(x - eps, Rat(0));
            case Kind::Threshold: return x >= eps ? Rat(1) : Rat(0);
        }
        return Rat(0);
    }

    std::string name() const {
        switch (kind) {
            case Kind::Identity: return "id";
            case Kind::TruncatedLinear: return "l:" + eps.str();
            case Kind::Threshold: return "L:" + eps.str();
        }
        return "?";
    }
};

inline Rat loss_eval(const LossFunction& l, const Rat& x) { return l.eval(x); }

} // namespace dimlab
