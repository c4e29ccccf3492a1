#pragma once

#include <functional>
#include <vector>

#include "docbin/fuzzy_cluster.hpp"
#include "docbin/image.hpp"

namespace docbin {

enum class Model { proposed, dh };

// All knobs of the coupled evolution. The a-coefficients drive the additive
// (proposed) system, the lambdas the multiplicative reference system; both
// share the clustering and time-step settings.
struct SolverParams {
  Model model = Model::proposed;

  // The fidelity pair is deliberately asymmetric: both fields start with
  // b + u one full unit above s, and a12 >> a22 makes the background soak
  // up that surplus instead of the foreground, which would otherwise crash
  // to black before the forcing can act.
  double a11 = 0.1;   // background diffusion
  double a12 = 1.0;   // background fidelity
  double a21 = 0.05;  // foreground edge-stopped diffusion
  double a22 = 0.05;  // foreground fidelity
  double a23 = 0.7;   // balance of threshold- vs floor-driven forcing, in (0,1)
  double a24 = 0.1;   // weak-stroke (local max) forcing

  double lambda11 = 0.1;
  double lambda12 = 1.0;
  double lambda21 = 0.15;
  double lambda22 = 1.0;
  double lambda23 = 0.5;

  double rho = 8.0;      // smoothing kernel radius
  int r = 3;             // local max window radius
  double epsilon = 0.05; // membership sharpness
  double alpha = 0.75;   // fractional derivative order, (0, 2]
  double tau = 0.1;      // time step
  int K = 8;             // fractional tail truncation
  int max_iters = 300;
  double rel_tol = 1e-4;

  // Throws on out-of-range values; warns on stderr when the explicit-step
  // stability budget tau * 4 * diffusion > 1 is exceeded.
  void validate() const;
};

struct SolverState {
  Field b;  // background estimate
  Field u;  // foreground / restored image estimate
  int n = 0;
  ClusterFields cluster;
  double s_min = 0.0;
};

// b starts flat at 1, u starts as the observed image.
SolverState init(const GrayImage& s, const SolverParams& params);

// Forcing ramp 1 - exp(-t/20): off at t = 0, saturating as the evolution
// settles, so the global floor term only bites once the clusters have acted.
double mu(double t);

// Max over the (2r+1)x(2r+1) window, mirror-extended at the borders.
Field local_max(const Field& u, int r);

// Cubic forcing that sends u toward {0,1}: threshold term gated by omega,
// floor term gated by (1-omega) and mu(t), and the local-max term that
// keeps faint strokes from being absorbed into the background.
Field source_term(const Field& s, const Field& u, const ClusterFields& cluster,
                  const Field& local_max_u, double t, double s_min, const SolverParams& params);

// Reference-system forcing: same first two terms (lambda23 balance), no
// local-max term.
Field dh_source_term(const Field& s, const Field& u, const ClusterFields& cluster,
                     double t, double s_min, const SolverParams& params);

// One explicit Euler update of b. Proposed model relaxes the additive
// residual s - b - u; the reference model the multiplicative s - b*u.
Field background_step(const SolverState& state, const Field& s, const SolverParams& params);

// Half-point averaged divergence sum_axes d/dx (g du/dx), the conservative
// form of the edge-stopped diffusion.
Field diffusion_divergence(const Field& u, const Field& g);

// One explicit Euler update of u against the already-updated background.
// Computes the edge-stopping weights from the current u (fractional gradient
// for the proposed model, squared integer gradient for the reference model),
// adds fidelity and forcing, clamps into [0,1]. Throws if the update
// produces a non-finite value.
Field foreground_step(const SolverState& state, const Field& s, const Field& b_next,
                      const SolverParams& params);

struct EvolveResult {
  Field b;
  Field u;
  int iterations = 0;
};

using TraceSink = std::function<void(int iteration, const Field& b, const Field& u)>;

// Alternates background and foreground updates until the relative L2 change
// of u drops below rel_tol or max_iters is reached. The optional sink
// receives (n, b, u) every trace_interval iterations.
EvolveResult evolve(const GrayImage& s, const SolverParams& params,
                    const TraceSink& sink = {}, int trace_interval = 0);

// Hard projection u > 0.5 -> background.
BinaryImage binarize(const Field& u);

// Scalar forward-Euler trajectory of du/dt = u(1-u)(u - v); v plays the
// role of the local threshold, the global floor, or the local max. Returns
// steps+1 values starting at u0.
std::vector<double> source_ode_trajectory(double u0, double v, double tau, int steps);

}  // namespace docbin
