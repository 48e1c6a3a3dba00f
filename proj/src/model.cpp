#include "nonrecip/model.hpp"

#include <initializer_list>
#include <utility>

namespace nonrecip {

namespace {

using Field = std::pair<const char*, double>;

void require_finite(std::initializer_list<Field> fields) {
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) throw DomainError(std::string(name) + " must be finite");
  }
}

void require_positive(std::initializer_list<Field> fields) {
  for (const auto& [name, value] : fields) {
    if (!(value > 0)) throw DomainError(std::string(name) + " must be > 0");
  }
}

void require_non_negative(std::initializer_list<Field> fields) {
  for (const auto& [name, value] : fields) {
    if (!(value >= 0)) throw DomainError(std::string(name) + " must be >= 0");
  }
}

}  // namespace

const PendulumParams& validate(const PendulumParams& p) {
  require_finite({{"omega1", p.omega1},
                  {"omega2", p.omega2},
                  {"gamma1", p.gamma1},
                  {"gamma2", p.gamma2},
                  {"g", p.g},
                  {"f1", p.f1},
                  {"f2", p.f2},
                  {"phi1", p.phi1},
                  {"phi2", p.phi2},
                  {"omega_d", p.omega_d}});
  require_positive({{"gamma1", p.gamma1}, {"gamma2", p.gamma2}});
  require_non_negative({{"g", p.g}, {"f1", p.f1}, {"f2", p.f2}});
  return p;
}

const OptomechDriveParams& validate(const OptomechDriveParams& p) {
  require_finite({{"delta_a1", p.delta_a1},
                  {"delta_a2", p.delta_a2},
                  {"delta_b1", p.delta_b1},
                  {"j", p.j},
                  {"g11", p.g11},
                  {"g21", p.g21},
                  {"eps_a1", p.eps_a1},
                  {"eps_a2", p.eps_a2},
                  {"phi_a1", p.phi_a1},
                  {"phi_a2", p.phi_a2},
                  {"eps_b1", p.eps_b1},
                  {"gamma_a1", p.gamma_a1},
                  {"gamma_a2", p.gamma_a2},
                  {"gamma_b1", p.gamma_b1}});
  require_positive({{"gamma_a1", p.gamma_a1}, {"gamma_a2", p.gamma_a2}, {"gamma_b1", p.gamma_b1}});
  require_non_negative({{"g11", p.g11},
                        {"g21", p.g21},
                        {"eps_a1", p.eps_a1},
                        {"eps_a2", p.eps_a2},
                        {"eps_b1", p.eps_b1}});
  return p;
}

const EffectiveParams& validate(const EffectiveParams& p) {
  require_finite({{"delta_p1", p.delta_p1},
                  {"delta_p2", p.delta_p2},
                  {"delta_b1", p.delta_b1},
                  {"j", p.j},
                  {"g11_eff.re", p.g11_eff.real()},
                  {"g11_eff.im", p.g11_eff.imag()},
                  {"g21_eff.re", p.g21_eff.real()},
                  {"g21_eff.im", p.g21_eff.imag()},
                  {"gamma_a1", p.gamma_a1},
                  {"gamma_a2", p.gamma_a2},
                  {"gamma_b1", p.gamma_b1}});
  require_positive({{"gamma_a1", p.gamma_a1}, {"gamma_a2", p.gamma_a2}, {"gamma_b1", p.gamma_b1}});
  return p;
}

}  // namespace nonrecip
