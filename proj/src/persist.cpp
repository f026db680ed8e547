#include "textclf/persist.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace textclf {

namespace {

constexpr char kMagic[4] = {'T', 'C', 'L', 'M'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kKindLinear = 0;
constexpr std::uint8_t kKindKernel = 1;

template <typename T>
void write_pod(std::ostream& out, T value) {
  static_assert(std::is_trivially_copyable_v<T>);
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::istream& in, const std::string& context) {
  static_assert(std::is_trivially_copyable_v<T>);
  T value;
  if (!in.read(reinterpret_cast<char*>(&value), sizeof(T))) {
    throw ModelIoError("truncated model file: " + context);
  }
  return value;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ModelIoError("cannot write model file " + path.string());
  return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelIoError("cannot read model file " + path.string());
  return in;
}

void write_header(std::ostream& out, std::uint8_t kind) {
  out.write(kMagic, sizeof(kMagic));
  write_pod(out, kVersion);
  write_pod(out, kind);
}

std::uint8_t read_header(std::istream& in, const std::string& origin) {
  char magic[4];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ModelIoError(origin + " is not a model file");
  }
  const auto version = read_pod<std::uint32_t>(in, origin);
  if (version != kVersion) {
    throw ModelIoError(origin + ": unsupported model format version " +
                       std::to_string(version));
  }
  const auto kind = read_pod<std::uint8_t>(in, origin);
  if (kind != kKindLinear && kind != kKindKernel) {
    throw ModelIoError(origin + ": unknown model kind");
  }
  return kind;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw ModelIoError("failed writing model file " + path.string());
}

void expect_eof(std::istream& in, const std::string& origin) {
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ModelIoError(origin + ": trailing data after model payload");
  }
}

}  // namespace

void save_model(const std::filesystem::path& path, const LinearModel& model) {
  auto out = open_for_write(path);
  write_header(out, kKindLinear);
  write_pod(out, static_cast<std::uint64_t>(model.dim));
  write_pod(out, static_cast<std::uint32_t>(model.n_classes));
  write_pod(out, model.C);
  for (int c = 0; c < model.n_classes; ++c) {
    const auto& w = model.weights[static_cast<std::size_t>(c)];
    write_pod(out, model.bias[static_cast<std::size_t>(c)]);
    std::uint64_t stored = 0;
    for (const double wi : w) {
      if (std::bit_cast<std::uint64_t>(wi) != 0) ++stored;
    }
    write_pod(out, stored);
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (std::bit_cast<std::uint64_t>(w[i]) == 0) continue;
      write_pod(out, static_cast<std::uint32_t>(i));
      write_pod(out, w[i]);
    }
  }
  finish_write(out, path);
}

void save_model(const std::filesystem::path& path, const KernelModel& model) {
  auto out = open_for_write(path);
  write_header(out, kKindKernel);
  write_pod(out, static_cast<std::uint64_t>(model.dim));
  write_pod(out, static_cast<std::uint32_t>(model.n_classes));
  write_pod(out, model.gamma);
  write_pod(out, model.C);
  write_pod(out, static_cast<std::uint64_t>(model.support_vectors.size()));
  for (const auto& sv : model.support_vectors) {
    write_pod(out, static_cast<std::uint64_t>(sv.size()));
    for (const auto& entry : sv) {
      write_pod(out, entry.index);
      write_pod(out, entry.value);
    }
  }
  for (int c = 0; c < model.n_classes; ++c) {
    write_pod(out, model.bias[static_cast<std::size_t>(c)]);
    for (const double coef : model.dual_coef[static_cast<std::size_t>(c)]) {
      write_pod(out, coef);
    }
  }
  finish_write(out, path);
}

ModelKind peek_model_kind(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_header(in, path.string()) == kKindLinear ? ModelKind::Linear
                                                       : ModelKind::Kernel;
}

LinearModel load_linear_model(const std::filesystem::path& path) {
  const std::string origin = path.string();
  auto in = open_for_read(path);
  if (read_header(in, origin) != kKindLinear) {
    throw ModelIoError(origin + " does not hold a linear model");
  }
  LinearModel model;
  model.dim = read_pod<std::uint64_t>(in, origin);
  const auto n_classes = read_pod<std::uint32_t>(in, origin);
  if (n_classes < 2 || n_classes > 1'000'000) {
    throw ModelIoError(origin + ": implausible class count");
  }
  model.n_classes = static_cast<int>(n_classes);
  model.C = read_pod<double>(in, origin);
  model.weights.resize(n_classes);
  model.bias.resize(n_classes);
  for (std::uint32_t c = 0; c < n_classes; ++c) {
    model.bias[c] = read_pod<double>(in, origin);
    const auto stored = read_pod<std::uint64_t>(in, origin);
    if (stored > model.dim) throw ModelIoError(origin + ": weight count exceeds dimensionality");
    auto& w = model.weights[c];
    w.assign(model.dim, 0.0);
    for (std::uint64_t i = 0; i < stored; ++i) {
      const auto index = read_pod<std::uint32_t>(in, origin);
      if (index >= model.dim) throw ModelIoError(origin + ": weight index out of range");
      w[index] = read_pod<double>(in, origin);
    }
  }
  expect_eof(in, origin);
  return model;
}

KernelModel load_kernel_model(const std::filesystem::path& path) {
  const std::string origin = path.string();
  auto in = open_for_read(path);
  if (read_header(in, origin) != kKindKernel) {
    throw ModelIoError(origin + " does not hold a kernel model");
  }
  KernelModel model;
  model.dim = read_pod<std::uint64_t>(in, origin);
  const auto n_classes = read_pod<std::uint32_t>(in, origin);
  if (n_classes < 2 || n_classes > 1'000'000) {
    throw ModelIoError(origin + ": implausible class count");
  }
  model.n_classes = static_cast<int>(n_classes);
  model.gamma = read_pod<double>(in, origin);
  model.C = read_pod<double>(in, origin);
  const auto n_sv = read_pod<std::uint64_t>(in, origin);
  model.support_vectors.resize(n_sv);
  for (auto& sv : model.support_vectors) {
    const auto nnz = read_pod<std::uint64_t>(in, origin);
    if (nnz > model.dim) throw ModelIoError(origin + ": support vector larger than dimensionality");
    sv.resize(nnz);
    for (auto& entry : sv) {
      entry.index = read_pod<std::uint32_t>(in, origin);
      if (entry.index >= model.dim) {
        throw ModelIoError(origin + ": support vector index out of range");
      }
      entry.value = read_pod<float>(in, origin);
    }
  }
  model.bias.resize(n_classes);
  model.dual_coef.resize(n_classes);
  for (std::uint32_t c = 0; c < n_classes; ++c) {
    model.bias[c] = read_pod<double>(in, origin);
    auto& coef = model.dual_coef[c];
    coef.resize(n_sv);
    for (auto& value : coef) value = read_pod<double>(in, origin);
  }
  expect_eof(in, origin);
  return model;
}

}  // namespace textclf
