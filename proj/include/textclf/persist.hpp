#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "textclf/kernel_svm.hpp"
#include "textclf/linear_svm.hpp"

namespace textclf {

class ModelIoError : public std::runtime_error {
 public:
  explicit ModelIoError(const std::string& message) : std::runtime_error(message) {}
};

enum class ModelKind { Linear, Kernel };

// Binary model files, written in host byte order.  Linear weights are
// stored sparsely: entries whose bit pattern is exactly +0.0 are omitted
// and restored as +0.0, everything else (including -0.0 and NaN payloads)
// round-trips bit for bit.
void save_model(const std::filesystem::path& path, const LinearModel& model);
void save_model(const std::filesystem::path& path, const KernelModel& model);

// Reads just enough of the header to identify the stored model type.
ModelKind peek_model_kind(const std::filesystem::path& path);

LinearModel load_linear_model(const std::filesystem::path& path);
KernelModel load_kernel_model(const std::filesystem::path& path);

}  // namespace textclf
