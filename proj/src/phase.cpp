#include "ccw/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace ccw {

namespace {

// Equality with a critical beta is declared at 1e-12 relative distance, with
// s = r at 1e-15 absolute; the raw distances travel in the report.
constexpr double kBetaRelTol = 1e-12;
constexpr double kSrTol = 1e-15;

void validate_fractions(double s, double r) {
    ModelParams p{1.0, s, r, 0.0};
    p.validate();
}

}  // namespace

const char* to_string(Region region) {
    switch (region) {
        case Region::Diagonal: return "Diagonal";
        case Region::Dominant: return "Dominant";
        case Region::OffDiagonalSmall: return "OffDiagonalSmall";
    }
    return "?";
}

const char* to_string(Regime regime) {
    switch (regime) {
        case Regime::NoJump: return "NoJump";
        case Regime::SymmetricFlip: return "SymmetricFlip";
        case Regime::JumpNoPhaseChange: return "JumpNoPhaseChange";
        case Regime::OrderDisorder: return "OrderDisorder";
        case Regime::AsymmetricFlip: return "AsymmetricFlip";
    }
    return "?";
}

double beta_star(double s, double r) {
    validate_fractions(s, r);
    return 1.0 / (1.0 - s - r);
}

double beta_double_star(double s, double r) {
    validate_fractions(s, r);
    if (s >= 0.5 || r >= 0.5) {
        throw std::domain_error("beta_double_star: requires s, r < 1/2");
    }
    if (std::fabs(s - r) <= kSrTol) {
        throw std::domain_error("beta_double_star: undefined on the diagonal s = r");
    }
    // Odd over odd, hence positive and symmetric under swapping s and r.
    return std::atanh((r - s) / (1.0 - s - r)) / (r - s);
}

Region classify_region(double s, double r) {
    validate_fractions(s, r);
    if (s >= 0.5 || r >= 0.5) return Region::Dominant;
    if (std::fabs(s - r) <= kSrTol) return Region::Diagonal;
    return Region::OffDiagonalSmall;
}

TransitionReport classify_transition(double s, double r, double beta) {
    ModelParams p{beta, s, r, 0.0};
    p.validate();

    TransitionReport rep;
    rep.region = classify_region(s, r);
    rep.beta_star = beta_star(s, r);
    rep.s_minus_r = s - r;
    rep.beta_minus_beta_star = beta - rep.beta_star;
    if (rep.region == Region::OffDiagonalSmall) {
        rep.beta_double_star = beta_double_star(s, r);
        rep.beta_minus_beta_double_star = beta - *rep.beta_double_star;
    }
    rep.limits = directional_limits(beta, s, r);

    if (beta < rep.beta_star || std::fabs(beta - rep.beta_star) <= kBetaRelTol * rep.beta_star) {
        rep.regime = Regime::NoJump;
        return rep;
    }
    switch (rep.region) {
        case Region::Diagonal:
            rep.regime = Regime::SymmetricFlip;
            break;
        case Region::Dominant:
            rep.regime = Regime::JumpNoPhaseChange;
            break;
        case Region::OffDiagonalSmall: {
            const double bss = *rep.beta_double_star;
            if (std::fabs(beta - bss) <= kBetaRelTol * bss) {
                rep.regime = Regime::OrderDisorder;
            } else if (beta < bss) {
                rep.regime = Regime::JumpNoPhaseChange;
            } else {
                rep.regime = Regime::AsymmetricFlip;
            }
            break;
        }
    }
    return rep;
}

double jump_magnitude(double s, double r, double beta) {
    ModelParams p{beta, s, r, 0.0};
    p.validate();
    const double t = p.coupling();
    return 2.0 * t * spontaneous_z(beta * t);
}

}  // namespace ccw
