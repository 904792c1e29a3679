#pragma once

// Data-parallel inner loops. Each kernel has a serial reference in
// kernels::serial and an OpenMP version in kernels::parallel; both produce
// bit-identical results (every output entry is written by one thread in a
// fixed order), which the kernel tests check.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "xprod/groups.hpp"
#include "xprod/linalg.hpp"

namespace xprod {

enum class ExecPolicy { Serial, Parallel };

/// One term L_t Psi(r) of a translation expansion.
struct TranslationTerm {
  GroupElement t;
  Matrix r;
};

namespace kernels {

using Evaluator = std::function<Complex(const GroupElement&)>;
using Membership = std::function<bool(const GroupElement&)>;
/// Returns alpha_{v^-1}(r) for the window element at index v.
using InverseAction = std::function<Matrix(std::size_t v, const Matrix& r)>;

namespace serial {

/// out(i, j) = f(elements[i] * elements[j]^-1).
Matrix gram_assemble(const GroupSpec& spec, std::span<const GroupElement> elements,
                     const Evaluator& f);

/// Number of h in `elements` with t * h a member.
std::size_t count_translates(const GroupSpec& spec, std::span<const GroupElement> elements,
                             const GroupElement& t, const Membership& member);

/// Sum over terms of the window compression of L_t Psi(r): block (t v, v)
/// receives alpha_{v^-1}(r) whenever t v lies in the window.
Matrix translate_assemble(const Ball& window, std::size_t block_dim,
                          std::span<const TranslationTerm> terms, const InverseAction& alpha_inv);

}  // namespace serial

namespace parallel {

Matrix gram_assemble(const GroupSpec& spec, std::span<const GroupElement> elements,
                     const Evaluator& f);
std::size_t count_translates(const GroupSpec& spec, std::span<const GroupElement> elements,
                             const GroupElement& t, const Membership& member);
Matrix translate_assemble(const Ball& window, std::size_t block_dim,
                          std::span<const TranslationTerm> terms, const InverseAction& alpha_inv);

}  // namespace parallel

Matrix gram_assemble(const GroupSpec& spec, std::span<const GroupElement> elements,
                     const Evaluator& f, ExecPolicy policy = ExecPolicy::Parallel);
std::size_t count_translates(const GroupSpec& spec, std::span<const GroupElement> elements,
                             const GroupElement& t, const Membership& member,
                             ExecPolicy policy = ExecPolicy::Parallel);
Matrix translate_assemble(const Ball& window, std::size_t block_dim,
                          std::span<const TranslationTerm> terms, const InverseAction& alpha_inv,
                          ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace kernels
}  // namespace xprod
