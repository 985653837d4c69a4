#ifndef SAW_HARNESS_HPP
#define SAW_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "saw/pivot.hpp"

namespace saw::harness {

// Configuration shared by every sawctl subcommand. Optional fields fall
// back to per-subcommand defaults (see effective_horizon).
struct RunConfig {
    std::string subcommand;
    int d = 2;
    int walk_length = 4;
    std::optional<std::size_t> horizon;
    std::uint64_t seed = 1;
    std::size_t replicas = 1;
    std::size_t n_steps = 10;
    Variant variant = Variant::pivot;
    std::string observe = "histogram";  // histogram | end2end
    double tol = 1e-6;                  // convergence tolerance
    double stochastic_tol = 1e-12;      // normalisation / G-method tolerance
    std::string out;                    // main output; empty = the `out` stream
    std::string format;                 // csv | json; empty = subcommand default
    std::string summary;                // conjecture summary JSON path
    std::string dump_walks;             // enumerate: walk text dump
    std::string dump_matrix;            // audit: matrix dump prefix
    std::string dump_trajectory;        // sample: replica-0 trajectory
    std::optional<std::string> start;   // conjecture start walk (canonical text)
    std::size_t m0 = 2;                 // audit: prefix search lower bound
    std::size_t max_walks = 1'000'000;
    std::size_t cases = 100;            // gmethod random cases
};

std::size_t effective_horizon(const RunConfig& cfg);
std::string effective_format(const RunConfig& cfg);

// Throws InvalidArgument with an actionable message.
void validate(const RunConfig& cfg);

nlohmann::ordered_json config_json(const RunConfig& cfg);

int cmd_enumerate(const RunConfig& cfg, std::ostream& out);
int cmd_audit(const RunConfig& cfg, std::ostream& out);
int cmd_conjecture(const RunConfig& cfg, std::ostream& out);
int cmd_sample(const RunConfig& cfg, std::ostream& out);
int cmd_gmethod(const RunConfig& cfg, std::ostream& out);

// Validates and dispatches on cfg.subcommand. Library errors become exit
// status 2 with the message on `err`; failed checks give exit status 1.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace saw::harness

#endif  // SAW_HARNESS_HPP
