#pragma once

// The soluble quotient loop: one basic step lifts G/L_{i,j}(G) to
// G/L_{i,j+1}(G) by an elementary abelian layer; soluble_quotient runs the
// steps prescribed by an L-series.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "solquo/collector.hpp"
#include "solquo/covering.hpp"
#include "solquo/module_solver.hpp"
#include "solquo/presentations.hpp"

namespace solquo {

LSpec lplus(const LSpec& spec, std::uint32_t p);
LSpec lminus(const LSpec& spec, std::uint32_t p);

struct StepReport {
  std::uint32_t prime = 0;
  std::size_t pair = 0;  // 0-based index into the requested L-series
  std::uint32_t step = 0;
  std::size_t module_rank = 0;  // s + t
  std::size_t dimension = 0;
  BigInt order;
  std::chrono::duration<double> elapsed{};
};

struct DriverConfig {
  BigInt max_order = 1000000000;
  ModuleSolverLimits solver;
  CoverLimits cover;
  std::function<void(const StepReport&)> progress;
  /// Sees every module computed, with the presentation of K/P it is over.
  std::function<void(const ModuleBasis&, const PcPresentation&)> inspect_module;
};

struct BasicStepResult {
  PcPresentation pc;
  Epimorphism tau;
  std::size_t dimension = 0;
  std::size_t module_rank = 0;
};

/// Lifts K = G/L by one elementary abelian p-layer. `head` is the number of
/// generators of K outside P; `weight` labels the new layer. Returns nullopt
/// when the layer is trivial.
std::optional<BasicStepResult> basic_step(const FpPresentation& fp, const PcPresentation& pcK,
                                          const Epimorphism& theta, std::uint32_t p,
                                          std::size_t head, Weight weight,
                                          const DriverConfig& config = {});

/// Basic step with P read off K's weights (head_count).
std::optional<BasicStepResult> basic_step(const FpPresentation& fp, const PcPresentation& pcK,
                                          const Epimorphism& theta, std::uint32_t p,
                                          const DriverConfig& config = {});

struct LayerRecord {
  std::uint32_t prime = 0;
  std::size_t dimension = 0;
  BigInt order;  // cumulative
};

struct QuotientResult {
  PcPresentation pc;
  Epimorphism tau;
  /// Pairs actually realized; a class below the requested one marks a
  /// layer that closed early.
  LSpec achieved;
  std::vector<LayerRecord> layer_log;
  /// Set when a ceiling stopped the run; the fields above then describe the
  /// last quotient reached.
  std::optional<std::string> ceiling;
};

QuotientResult soluble_quotient(const FpPresentation& fp, const LSpec& spec,
                                const DriverConfig& config = {});

/// Every relator maps to the identity and every generator of the target
/// with an image definition is defined correctly. Throws
/// Error(invalid_epimorphism) otherwise.
void check_epimorphism(const FpPresentation& fp, const PcPresentation& pc,
                       const Epimorphism& tau);

}  // namespace solquo
