#include "xprod/blockio.hpp"

#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <string>

#include "xprod/errors.hpp"

namespace xprod {

namespace {

static_assert(std::endian::native == std::endian::little, "binary format assumes a little-endian host");

constexpr char kMagic[4] = {'X', 'P', 'B', 'M'};

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& in) {
  T v{};
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v)) throw DomainError("truncated block matrix stream");
  return v;
}

void check_window(const CrossedContext& ctx, const std::string& group, std::uint64_t radius, std::int64_t ordering,
                  std::uint64_t block_dim) {
  if (ordering != kBallOrderingVersion)
    throw DomainError("matrix uses ball ordering version " + std::to_string(ordering) + ", this build uses " +
                      std::to_string(kBallOrderingVersion));
  if (group != ctx.group().name() || radius != ctx.window().radius())
    throw DomainError("matrix window " + group + " radius " + std::to_string(radius) + " does not match " +
                      ctx.group().name() + " radius " + std::to_string(ctx.window().radius()));
  if (block_dim != ctx.block_dim()) throw DomainError("matrix block dimension does not match the context");
}

}  // namespace

void write_binary(std::ostream& out, const BlockMatrix& x) {
  out.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(out, kBlockFormatVersion);
  const auto name = x.window().spec().name();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(name.size()));
  out.write(name.data(), static_cast<std::streamsize>(name.size()));
  put<std::uint64_t>(out, x.window().radius());
  put<std::int32_t>(out, kBallOrderingVersion);
  put<std::uint64_t>(out, x.block_dim());
  const auto n = x.data().rows();
  put<std::uint64_t>(out, static_cast<std::uint64_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      put<double>(out, x.data()(i, j).real());
      put<double>(out, x.data()(i, j).imag());
    }
  }
  if (!out) throw Error("failed writing block matrix");
}

BlockMatrix read_binary(std::istream& in, const CrossedContext& ctx) {
  char magic[4];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw DomainError("not a block matrix stream");
  if (get<std::uint32_t>(in) != kBlockFormatVersion) throw DomainError("unsupported block matrix format version");
  const auto len = get<std::uint32_t>(in);
  if (len > 4096) throw DomainError("malformed group name");
  std::string name(len, '\0');
  if (!in.read(name.data(), len)) throw DomainError("truncated block matrix stream");
  const auto radius = get<std::uint64_t>(in);
  const auto ordering = get<std::int32_t>(in);
  const auto block_dim = get<std::uint64_t>(in);
  check_window(ctx, name, radius, ordering, block_dim);
  const auto n = get<std::uint64_t>(in);
  if (n != ctx.window_size() * ctx.block_dim()) throw DomainError("matrix size does not match the window");
  Matrix data(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      data(i, j) = {re, im};
    }
  }
  return {ctx.window_ptr(), ctx.block_dim(), std::move(data)};
}

nlohmann::ordered_json to_json(const BlockMatrix& x) {
  nlohmann::ordered_json j;
  j["window"] = {{"group", x.window().spec().name()},
                 {"radius", x.window().radius()},
                 {"ordering_version", kBallOrderingVersion}};
  j["block_dim"] = x.block_dim();
  j["rows"] = x.data().rows();
  auto data = nlohmann::ordered_json::array();
  for (Eigen::Index i = 0; i < x.data().rows(); ++i) {
    for (Eigen::Index k = 0; k < x.data().cols(); ++k) {
      data.push_back(x.data()(i, k).real());
      data.push_back(x.data()(i, k).imag());
    }
  }
  j["data"] = std::move(data);
  return j;
}

BlockMatrix block_matrix_from_json(const nlohmann::ordered_json& j, const CrossedContext& ctx) {
  try {
    const auto& w = j.at("window");
    check_window(ctx, w.at("group").get<std::string>(), w.at("radius").get<std::uint64_t>(),
                 w.at("ordering_version").get<std::int64_t>(), j.at("block_dim").get<std::uint64_t>());
    const auto n = j.at("rows").get<std::uint64_t>();
    if (n != ctx.window_size() * ctx.block_dim()) throw DomainError("matrix size does not match the window");
    const auto& data = j.at("data");
    if (data.size() != 2 * n * n) throw DomainError("matrix data has the wrong length");
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    std::size_t at = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) {
        m(i, k) = {data[at].get<double>(), data[at + 1].get<double>()};
        at += 2;
      }
    }
    return {ctx.window_ptr(), ctx.block_dim(), std::move(m)};
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed block matrix JSON: ") + e.what());
  }
}

}  // namespace xprod
