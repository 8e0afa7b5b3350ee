#pragma once

#include <string>
#include <vector>

#include "mbd/darboux.hpp"

namespace mbd {

struct FieldPair {
  Complex e_minus{0.0, 0.0};
  Complex e_plus{0.0, 0.0};
};

/// Two-soliton family built on the zero background from one complex
/// spectral parameter mu and the constant pairs of the two coupled steps
/// (mu, mu^*).  Valid for detuning distributions symmetric about the
/// resonance shift (the conjugate pairing needs <f(x)> = <f(-x)>).
struct TwoSolitonParams {
  Complex mu;
  Complex a1, b1, c1;
  Complex a2, b2, c2;
};

/// Closed form reconciled against the dressing engine.
FieldPair two_soliton_fields(const TwoSolitonParams& p, double tau, double zeta,
                             const DetuningModel& detuning);

/// Uncorrected transcription, kept to document its deviation.
FieldPair two_soliton_fields_uncorrected(const TwoSolitonParams& p, double tau,
                                         double zeta,
                                         const DetuningModel& detuning);

/// Dressed periodic-pump family, spectral parameter mu = |E| cosh(gamma).
struct DressedPeriodicParams {
  Complex E;
  int branch = +1;
  Complex gamma;
  Complex C1, C_plus, C_minus;
};

FieldPair dressed_periodic_fields(const DressedPeriodicParams& p, double tau,
                                  double zeta, const DetuningModel& detuning);

FieldPair dressed_periodic_fields_uncorrected(const DressedPeriodicParams& p,
                                              double tau, double zeta,
                                              const DetuningModel& detuning);

struct ErrataEntry {
  std::string family;
  std::string mode;  // "corrected" | "uncorrected"
  double max_deviation = 0.0;
  std::string parameter_note;
  std::vector<std::string> corrections;

  std::string to_markdown() const;
  std::string csv_header() const;
  std::string to_csv_row() const;
};

/// Max deviation between the closed form and the equivalent dressing chain
/// over the grid, with the parameter mapping recorded.
ErrataEntry reconcile_two_soliton(const TwoSolitonParams& p,
                                  const DetuningModel& detuning,
                                  const Grid2D& grid, bool uncorrected = false);

ErrataEntry reconcile_dressed_periodic(const DressedPeriodicParams& p,
                                       const DetuningModel& detuning,
                                       const Grid2D& grid,
                                       bool uncorrected = false);

}  // namespace mbd
