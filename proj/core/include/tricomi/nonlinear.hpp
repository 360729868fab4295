#pragma once
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tricomi/grid.hpp"

namespace tricomi::nonlinear {

using propagator::Field;
using propagator::GridSpec;

enum class Method { picard, stepper };

struct SimulationConfig {
    double p = 2.0;
    GridSpec grid;
    double dt = 0.01;
    double T = 1.0;
    bool dealias = true;
    double blowup_threshold = 1e6;
    Method method = Method::stepper;
    // Added to the source; used for manufactured solutions.
    std::function<double(double, const std::array<double, 3>&)> extra_forcing;
    double amplitude = 1.0;          // data scale, echoed in outputs
    double nonlinearity_coeff = 1.0; // 0 switches the |u|^p source off
    int output_every = 10;           // trace cadence in steps
    bool store_fields = false;       // keep fields at output times
    double picard_tol = 1e-10;       // early stop on A_k
    // Indices of the mixed norm recorded in traces and Picard diagnostics (n = 2 only);
    // unset means the small-data existence tuple for p, or (4,4) outside its range.
    std::optional<double> mixed_q, mixed_r;

    void validate() const;
};

struct SimulationTrace {
    std::vector<double> times, sup_norm, G, Lp_norm;
    std::vector<double> radial_norm;  // inner mixed-norm factor per output time (n = 2)
    double mixed_q = 0.0, mixed_r = 0.0;
    double mixed_norm = 0.0;          // time norm of radial_norm
    std::vector<Field> fields;        // only with store_fields
    double initial_sup = 0.0;
    double dt = 0.0;
    bool flagged = false;             // blowup threshold crossed
    double flag_time = 0.0;
    bool completed = false;           // reached the horizon
};

enum class Outcome { blew_up, survived, inconclusive };
const char* to_string(Outcome o);

struct BlowupVerdict {
    Outcome outcome;
    double time;  // t* for blew_up, horizon for survived
    std::string reason;
};

struct PicardDiagnostics {
    std::vector<double> M;  // mixed norm + energy of each iterate
    std::vector<double> A;  // ||u_k - u_{k-1}||, A[0] unused (k starts at 1)
};

struct PicardResult {
    std::vector<Field> final_iterates;  // u_k(T) for k = 0..K_done
    std::vector<double> times;          // time nodes of the last iterate
    std::vector<Field> last_iterate;    // u_K on the time nodes
    PicardDiagnostics diagnostics;
    int iterations = 0;
};

// |u|^p via exp(p log max(|u|, 1e-300)).
double abs_pow(double u, double p);
Field power_source(const Field& u, double p, bool dealias);

// Mixed-norm indices used for diagnostics.
std::pair<double, double> diagnostic_indices(const SimulationConfig& cfg);

PicardResult picard_iterate(const Field& f, const Field& g, const SimulationConfig& cfg, int K);
SimulationTrace evolve(const Field& f, const Field& g, const SimulationConfig& cfg);
BlowupVerdict detect_blowup(const SimulationTrace& trace, const Field& f, const Field& g,
                            const SimulationConfig& cfg);

}  // namespace tricomi::nonlinear
