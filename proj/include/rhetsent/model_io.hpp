#ifndef RHETSENT_MODEL_IO_HPP
#define RHETSENT_MODEL_IO_HPP

#include <cstdint>
#include <iosfwd>
#include <string>

#include "rhetsent/features.hpp"
#include "rhetsent/r2n2.hpp"

namespace rhetsent {

// Versioned structured-text model file. Section order is fixed so that the
// same model always serializes to the same bytes; doubles are written with
// 17 significant digits and round-trip exactly.
struct SavedModel {
  enum class Kind { LogReg, R2n2 };

  Kind kind = Kind::LogReg;
  std::uint64_t seed = 0;
  Vocabulary vocab;
  WeightVector theta;
  double bias = 0.0;      // logreg
  double reg_coef = 0.0;  // logreg

  // r2n2 sections
  RelationMode mode = RelationMode::WithRelations;
  std::array<double, 2> k_n{1.0, 1.0};
  std::array<double, 2> k_s{0.5, 0.5};
  double gamma = 0.5;

  R2n2Params r2n2_params() const;
};

void save_model(const SavedModel& model, std::ostream& out);
void save_model_file(const SavedModel& model, const std::string& path);

// Throws ParseError on malformed files or unsupported versions; verifies the
// recorded vocabulary hash against the listed tokens.
SavedModel load_model(std::istream& in);
SavedModel load_model_file(const std::string& path);

// Fixed-width double formatting used across all text outputs.
std::string format_double(double v);

}  // namespace rhetsent

#endif  // RHETSENT_MODEL_IO_HPP
