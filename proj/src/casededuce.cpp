#include "bochnerlab/casededuce.hpp"

#include <boost/rational.hpp>
#include <sstream>
#include <stdexcept>

namespace bochnerlab::deduce {

namespace {

using Rat = boost::rational<long long>;
using Vec3 = std::array<Rat, 3>;
using Form = std::array<Rat, 3>;  // linear form over (mu_a, mu_b, mu_c)

Rat eval(const Form& f, const Vec3& v) {
  return f[0] * v[0] + f[1] * v[1] + f[2] * v[2];
}

bool is_zero(const Rat& r) { return r.numerator() == 0; }

Rat det3(const Form& r0, const Form& r1, const Form& r2) {
  return r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) -
         r0[1] * (r1[0] * r2[2] - r1[2] * r2[0]) +
         r0[2] * (r1[0] * r2[1] - r1[1] * r2[0]);
}

std::string rat_str(const Rat& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

std::string vec_str(const Vec3& v) {
  return "(" + rat_str(v[0]) + ", " + rat_str(v[1]) + ", " + rat_str(v[2]) + ")";
}

// the replay recomputes everything it claims; a mismatch means the case
// table itself is corrupt
void require(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("case replay failed: ") + what);
}

void require_kernel(const std::vector<Form>& sys, const Vec3& ray) {
  for (const auto& f : sys) require(is_zero(eval(f, ray)), "claimed ray misses kernel");
}

// quadratics of the distinct-slot family: determinant of the symmetric pair
// system with the given index singled out
Rat quad_distinguished_a(const Vec3& v) {
  return (5 * v[1] + v[0]) * (5 * v[2] + v[0]) - (v[1] + v[2]) * (v[1] + v[2]);
}
Rat quad_distinguished_b(const Vec3& v) {
  return (5 * v[0] + v[1]) * (5 * v[2] + v[1]) - (v[0] + v[2]) * (v[0] + v[2]);
}
Rat quad_distinguished_c(const Vec3& v) {
  return (5 * v[1] + v[2]) * (5 * v[0] + v[2]) - (v[0] + v[1]) * (v[0] + v[1]);
}

// families 1 and 2: repeated-direction entry nonzero.  The printed analysis
// covers the conjugate-direction version; the other one replays the same
// systems after conjugating, which leaves the real eigenvalues untouched.
void replay_repeated_direction(std::vector<std::string>& trace) {
  {
    // sub-case I: the companion entry with a third index vanishes, so three
    // independent linear relations on (mu_a, mu_b, mu_c) survive
    const Form f1 = {5, 1, 0};  // 5 mu_a + mu_b
    const Form f2 = {1, 0, 1};  // mu_a + mu_c
    const Form f3 = {1, 1, 2};  // mu_a + mu_b + 2 mu_c
    const Rat d = det3(f1, f2, f3);
    require(!is_zero(d), "sub-case I system is singular");
    trace.push_back("  sub-case I (companion entry zero): system {5 mu_a + mu_b, "
                    "mu_a + mu_c, mu_a + mu_b + 2 mu_c} has determinant " +
                    rat_str(d) + ", so mu_a = mu_b = mu_c = 0");
  }
  {
    // sub-case II: the companion entry is nonzero too, adding 5 mu_a + mu_c
    // and leaving the one-parameter ray below; the two remaining relations
    // couple the entries, and a nonzero entry pair needs their determinant
    // to vanish
    const Form f1 = {5, 1, 0};
    const Form f4 = {5, 0, 1};
    const Vec3 ray = {1, -5, -5};
    require_kernel({f1, f4}, ray);
    const Rat coeff = (ray[0] + ray[2]) * (-(ray[1] + ray[2])) -
                      (ray[0] + ray[1]) * (ray[0] + ray[1] + 2 * ray[2]);
    require(!is_zero(coeff), "sub-case II compatibility vanishes on the ray");
    trace.push_back("  sub-case II (companion entry nonzero): relations force the "
                    "ray t*" + vec_str(ray) + "; the entry-pair compatibility "
                    "determinant evaluates to " + rat_str(coeff) +
                    " t^2, nonzero, so t = 0");
  }
}

void replay_distinct_holomorphic(std::vector<std::string>& trace) {
  {
    // sub-case I: a second independent entry is nonzero, so all three
    // distinguished-index determinants must vanish; their pairwise
    // differences factor into linear conditions, leaving four rays and the
    // pairwise-distinct branch
    struct Branch {
      Vec3 ray;
      Rat (*quad)(const Vec3&);
      const char* label;
    };
    const Branch branches[] = {
        {{1, 1, 1}, quad_distinguished_a, "all eigenvalues equal"},
        {{8, 1, 1}, quad_distinguished_a, "mu_b = mu_c, mu_a = 8 mu_b"},
        {{1, 8, 1}, quad_distinguished_b, "mu_a = mu_c, mu_b = 8 mu_a"},
        {{1, 1, 8}, quad_distinguished_c, "mu_a = mu_b, mu_c = 8 mu_a"},
    };
    std::string vals;
    for (const auto& br : branches) {
      // the ray must solve the difference conditions, which is the same as
      // making all three quadratics agree on it
      const Rat qa = quad_distinguished_a(br.ray);
      const Rat qb = quad_distinguished_b(br.ray);
      const Rat qc = quad_distinguished_c(br.ray);
      require(qa == qb && qb == qc, "branch ray misses the difference conditions");
      require(!is_zero(qa), "branch quadratic vanishes on the ray");
      if (!vals.empty()) vals += ", ";
      vals += std::string(br.label) + ": " + rat_str(br.quad(br.ray)) + " t^2";
    }
    trace.push_back("  sub-case I (second entry nonzero): every equal-eigenvalue "
                    "ray meets a nonzero determinant quadratic {" + vals +
                    "}, so t = 0 on each");
    const Form g1 = {1, 1, -9};
    const Form g2 = {-9, 1, 1};
    const Form g3 = {1, -9, 1};
    const Rat d = det3(g1, g2, g3);
    require(!is_zero(d), "pairwise-distinct system is singular");
    trace.push_back("  sub-case I, pairwise distinct eigenvalues: the factored "
                    "conditions {mu_a + mu_b - 9 mu_c, mu_b + mu_c - 9 mu_a, "
                    "mu_a + mu_c - 9 mu_b} have determinant " + rat_str(d) +
                    ", so mu_a = mu_b = mu_c = 0");
  }
  {
    // sub-case II: the companion entries vanish, the surviving relations pin
    // a ray and one distinguished determinant still applies
    const Form f1 = {0, 5, 1};  // 5 mu_b + mu_c
    const Form f2 = {1, 1, 0};  // mu_a + mu_b
    const Vec3 ray = {-1, 1, -5};
    require_kernel({f1, f2}, ray);
    const Rat q = quad_distinguished_b(ray);
    require(!is_zero(q), "sub-case II quadratic vanishes on the ray");
    trace.push_back("  sub-case II (companion entries zero): relations {5 mu_b + "
                    "mu_c, mu_a + mu_b} force the ray t*" + vec_str(ray) +
                    "; the distinguished determinant evaluates to " + rat_str(q) +
                    " t^2, nonzero, so t = 0");
  }
}

void replay_conjugate_distinct(std::vector<std::string>& trace) {
  {
    // the substitution pins (5 mu_b + mu_c) directly; swapping the skew
    // argument pair gives the partner relation
    const Form f1 = {0, 5, 1};
    const Form f2 = {0, 1, 5};
    const Rat d = f1[1] * f2[2] - f1[2] * f2[1];
    require(!is_zero(d), "argument-swap pair is singular");
    trace.push_back("  relations {5 mu_b + mu_c, mu_b + 5 mu_c} have determinant " +
                    rat_str(d) + ", so mu_b = mu_c = 0");
  }
  {
    // with mu_b = mu_c = 0 the Bianchi sum couples the two nabla-q entries
    // through the matrix {{1, -2}, {-2, 1}}
    const Rat d = Rat(1) * Rat(1) - Rat(-2) * Rat(-2);
    require(!is_zero(d), "nabla-q pair system is singular");
    trace.push_back("  the two nabla-q entries satisfy a system with determinant " +
                    rat_str(d) + ", so both vanish");
    trace.push_back("  the remaining Bianchi relation splits: the nabla-q part is "
                    "symmetric in (b, c), the mu_a part antisymmetric, so "
                    "mu_a * (nonzero entry) = 0 and mu_a = 0");
  }
}

}  // namespace

CaseDeduction case_deduction(const std::array<bool, 4>& family_nonzero, int n) {
  CaseDeduction out;
  if (n <= 2) {
    out.verdict = "not applicable";
    out.trace.push_back("the rigidity statement needs n > 2; nothing to deduce "
                        "for n = " + std::to_string(n));
    return out;
  }

  const bool any = family_nonzero[0] || family_nonzero[1] || family_nonzero[2] ||
                   family_nonzero[3];
  if (!any) {
    out.verdict = "Kählerian at p";
    out.trace.push_back("every complexified nabla-J entry family vanishes at the "
                        "point, so nabla-J = 0 there");
    return out;
  }

  if (family_nonzero[1]) {
    out.trace.push_back("family 2 nonzero: g((nabla_{zbar_b} J) z_b, z_a) != 0");
    replay_repeated_direction(out.trace);
  }
  if (family_nonzero[0]) {
    out.mirrored = true;
    out.trace.push_back("family 1 nonzero: g((nabla_{z_b} J) z_b, z_a) != 0; "
                        "conjugating the entry (eigenvalues are real) lands in "
                        "the family 2 analysis");
    replay_repeated_direction(out.trace);
  }
  if (family_nonzero[2]) {
    out.trace.push_back("family 3 nonzero: g((nabla_{z_a} J) z_b, z_c) != 0 with "
                        "distinct indices");
    replay_distinct_holomorphic(out.trace);
  }
  if (family_nonzero[3]) {
    out.trace.push_back("family 4 nonzero: g((nabla_{zbar_a} J) z_b, z_c) != 0 "
                        "with distinct indices");
    replay_conjugate_distinct(out.trace);
  }

  if (n > 3) {
    out.trace.push_back("n > 3: the paired substitutions in any extra index d "
                        "give (nonzero constant) * mu_d * (nonzero entry) = 0, "
                        "so every remaining eigenvalue vanishes");
  }

  out.all_mu_zero = true;
  out.verdict = "flat at p";
  out.trace.push_back("all eigenvalues vanish, so the auxiliary form is zero and "
                      "the curvature, which equals its ten-term image, vanishes "
                      "at the point");
  return out;
}

}  // namespace bochnerlab::deduce
