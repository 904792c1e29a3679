#include "xprod/kernels.hpp"

#include <exception>
#include <mutex>

namespace xprod::kernels {

namespace {

std::vector<GroupElement> inverses(const GroupSpec& spec, std::span<const GroupElement> elements) {
  std::vector<GroupElement> inv;
  inv.reserve(elements.size());
  for (const auto& g : elements) inv.push_back(inverse(spec, g));
  return inv;
}

// Writes every block (t v, v) of column block v.
void assemble_column(const Ball& window, Eigen::Index d, std::span<const TranslationTerm> terms,
                     const InverseAction& alpha_inv, std::size_t v, Matrix& out) {
  const auto& spec = window.spec();
  for (const auto& term : terms) {
    const auto row = window.find(multiply(spec, term.t, window[v]));
    if (!row) continue;
    out.block(static_cast<Eigen::Index>(*row) * d, static_cast<Eigen::Index>(v) * d, d, d) +=
        alpha_inv(v, term.r);
  }
}

// Exceptions must not escape an OpenMP region; the first one is kept and
// rethrown on the calling thread.
class FirstError {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mutex_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mutex_;
  std::exception_ptr error_;
};

}  // namespace

namespace serial {

Matrix gram_assemble(const GroupSpec& spec, std::span<const GroupElement> elements,
                     const Evaluator& f) {
  const auto n = static_cast<Eigen::Index>(elements.size());
  const auto inv = inverses(spec, elements);
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      out(i, j) = f(multiply(spec, elements[i], inv[j]));
    }
  }
  return out;
}

std::size_t count_translates(const GroupSpec& spec, std::span<const GroupElement> elements,
                             const GroupElement& t, const Membership& member) {
  std::size_t count = 0;
  for (const auto& h : elements) {
    if (member(multiply(spec, t, h))) ++count;
  }
  return count;
}

Matrix translate_assemble(const Ball& window, std::size_t block_dim,
                          std::span<const TranslationTerm> terms, const InverseAction& alpha_inv) {
  const auto d = static_cast<Eigen::Index>(block_dim);
  const auto n = static_cast<Eigen::Index>(window.size());
  Matrix out = Matrix::Zero(n * d, n * d);
  for (std::size_t v = 0; v < window.size(); ++v) {
    assemble_column(window, d, terms, alpha_inv, v, out);
  }
  return out;
}

}  // namespace serial

namespace parallel {

Matrix gram_assemble(const GroupSpec& spec, std::span<const GroupElement> elements,
                     const Evaluator& f) {
  const auto n = static_cast<Eigen::Index>(elements.size());
  const auto inv = inverses(spec, elements);
  Matrix out(n, n);
  FirstError guard;
#pragma omp parallel for schedule(dynamic, 8)
  for (Eigen::Index i = 0; i < n; ++i) {
    guard.run([&] {
      for (Eigen::Index j = 0; j < n; ++j) {
        out(i, j) = f(multiply(spec, elements[i], inv[j]));
      }
    });
  }
  guard.rethrow();
  return out;
}

std::size_t count_translates(const GroupSpec& spec, std::span<const GroupElement> elements,
                             const GroupElement& t, const Membership& member) {
  const auto n = static_cast<std::ptrdiff_t>(elements.size());
  std::size_t count = 0;
  FirstError guard;
#pragma omp parallel for reduction(+ : count) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    guard.run([&] {
      if (member(multiply(spec, t, elements[i]))) ++count;
    });
  }
  guard.rethrow();
  return count;
}

Matrix translate_assemble(const Ball& window, std::size_t block_dim,
                          std::span<const TranslationTerm> terms, const InverseAction& alpha_inv) {
  const auto d = static_cast<Eigen::Index>(block_dim);
  const auto n = static_cast<Eigen::Index>(window.size());
  Matrix out = Matrix::Zero(n * d, n * d);
  const auto cols = static_cast<std::ptrdiff_t>(window.size());
  FirstError guard;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::ptrdiff_t v = 0; v < cols; ++v) {
    guard.run([&] { assemble_column(window, d, terms, alpha_inv, static_cast<std::size_t>(v), out); });
  }
  guard.rethrow();
  return out;
}

}  // namespace parallel

Matrix gram_assemble(const GroupSpec& spec, std::span<const GroupElement> elements,
                     const Evaluator& f, ExecPolicy policy) {
  return policy == ExecPolicy::Serial ? serial::gram_assemble(spec, elements, f)
                                      : parallel::gram_assemble(spec, elements, f);
}

std::size_t count_translates(const GroupSpec& spec, std::span<const GroupElement> elements,
                             const GroupElement& t, const Membership& member, ExecPolicy policy) {
  return policy == ExecPolicy::Serial ? serial::count_translates(spec, elements, t, member)
                                      : parallel::count_translates(spec, elements, t, member);
}

Matrix translate_assemble(const Ball& window, std::size_t block_dim,
                          std::span<const TranslationTerm> terms, const InverseAction& alpha_inv,
                          ExecPolicy policy) {
  return policy == ExecPolicy::Serial
             ? serial::translate_assemble(window, block_dim, terms, alpha_inv)
             : parallel::translate_assemble(window, block_dim, terms, alpha_inv);
}

}  // namespace xprod::kernels
