#include <complex>
#include <sstream>
#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weilsum/bounds.hpp"
#include "weilsum/cli.hpp"
#include "weilsum/error.hpp"
#include "weilsum/gauss.hpp"
#include "weilsum/identity.hpp"
#include "weilsum/kloosterman.hpp"
#include "weilsum/weilrep.hpp"

namespace py = pybind11;
using namespace weilsum;

namespace {

std::complex<double> to_complex(const AlgValue& z) { return {z.re().to_double(), z.im().to_double()}; }

DiscElement element(const EvenLattice& L, const std::vector<std::string>& coords) {
  if (coords.empty()) return DiscElement::zero(L);
  std::vector<Rational> x;
  x.reserve(coords.size());
  for (const auto& s : coords) x.push_back(parse_rational(s));
  return DiscElement::from_coords(L, x);
}

KloostermanSpec make_spec(const IntMatrix& gram, const std::vector<std::string>& alpha,
                          const std::vector<std::string>& beta, std::int64_t m, std::int64_t n, std::int64_t c,
                          const std::string& k) {
  const EvenLattice L(gram);
  std::optional<Rational> weight;
  if (!k.empty()) weight = parse_rational(k);
  return KloostermanSpec::make(L, element(L, alpha), element(L, beta), m, n, c, weight);
}

py::dict identity_dict(const IdentityResult& r) {
  py::dict d;
  d["lhs"] = to_complex(r.lhs);
  d["rhs"] = to_complex(r.rhs);
  d["residual"] = r.residual.to_double();
  return d;
}

GaussMode gauss_mode(const std::string& s) {
  if (s == "closed") return GaussMode::closed_form;
  if (s == "brute") return GaussMode::brute_force;
  throw DomainError("gauss mode must be closed or brute");
}

}  // namespace

PYBIND11_MODULE(_weilsum, m) {
  m.doc() = "Kloosterman sums for the Weil representation of even lattices";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<EvenLattice>(m, "Lattice")
      .def(py::init<const IntMatrix&>(), py::arg("gram"))
      .def_property_readonly("rank", &EvenLattice::rank)
      .def_property_readonly("det", &EvenLattice::det)
      .def_property_readonly("gram", [](const EvenLattice& L) { return L.gram(); })
      .def_property_readonly("signature",
                             [](const EvenLattice& L) { return std::pair(L.signature().b_plus, L.signature().b_minus); })
      .def("discriminant_group",
           [](const EvenLattice& L) {
             const DiscGroup G(L);
             std::vector<std::string> out;
             for (const auto& a : G.elements()) out.push_back(a.to_string());
             return out;
           })
      .def("__repr__", [](const EvenLattice& L) { return "Lattice(" + L.describe() + ")"; });

  m.def(
      "kloosterman_sum",
      [](const IntMatrix& gram, const std::vector<std::string>& alpha, const std::vector<std::string>& beta,
         std::int64_t mm, std::int64_t n, std::int64_t c, const std::string& k, int prec_bits) {
        return to_complex(kloosterman_weil(make_spec(gram, alpha, beta, mm, n, c, k), prec_bits));
      },
      py::arg("gram"), py::arg("alpha"), py::arg("beta"), py::arg("m"), py::arg("n"), py::arg("c"),
      py::arg("k") = "", py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "fast_kloosterman",
      [](const IntMatrix& gram, const std::vector<std::string>& alpha, const std::vector<std::string>& beta,
         std::int64_t mm, std::int64_t n, std::int64_t c, std::int64_t v, const std::string& k, int prec_bits) {
        return to_complex(fast_kloosterman(make_spec(gram, alpha, beta, mm, n, c, k), v, prec_bits));
      },
      py::arg("gram"), py::arg("alpha"), py::arg("beta"), py::arg("m"), py::arg("n"), py::arg("c"), py::arg("v"),
      py::arg("k") = "", py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "verify_identity",
      [](const IntMatrix& gram, const std::vector<std::string>& alpha, const std::vector<std::string>& beta,
         std::int64_t mm, std::int64_t n, std::int64_t c, std::int64_t v, int prec_bits) {
        return identity_dict(verify_identity(make_spec(gram, alpha, beta, mm, n, c, ""), v, prec_bits));
      },
      py::arg("gram"), py::arg("alpha"), py::arg("beta"), py::arg("m"), py::arg("n"), py::arg("c"), py::arg("v"),
      py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "verify_theta_identity",
      [](std::int64_t mm, std::int64_t n, std::int64_t c, std::int64_t v, int prec_bits) {
        return identity_dict(verify_theta_identity(mm, n, c, v, prec_bits));
      },
      py::arg("m"), py::arg("n"), py::arg("c"), py::arg("v"), py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "verify_eta_identity",
      [](std::int64_t mm, std::int64_t n, std::int64_t c, std::int64_t v, int prec_bits) {
        return identity_dict(verify_eta_identity(mm, n, c, v, prec_bits));
      },
      py::arg("m"), py::arg("n"), py::arg("c"), py::arg("v"), py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "kloosterman_ordinary",
      [](std::int64_t mm, std::int64_t n, std::int64_t c, int prec_bits) {
        return to_complex(kloosterman_ordinary(mm, n, c, prec_bits));
      },
      py::arg("m"), py::arg("n"), py::arg("c"), py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "gauss_sum",
      [](const std::string& kind, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t n, std::int64_t p,
         int lambda, const IntMatrix& gram, const std::string& mode, int prec_bits) {
        GaussSumQuery q;
        q.kind = parse_gauss_kind(kind);
        q.a = a;
        q.b = b;
        q.c = c;
        q.n = n;
        q.p = p;
        q.lambda = lambda;
        q.gram = gram;
        return to_complex(evaluate(q, gauss_mode(mode), prec_bits));
      },
      py::arg("kind"), py::arg("a") = 1, py::arg("b") = 0, py::arg("c") = 1, py::arg("n") = 0, py::arg("p") = 3,
      py::arg("lambda_") = 1, py::arg("gram") = IntMatrix{}, py::arg("mode") = "closed",
      py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "chi_m",
      [](std::int64_t mm, std::int64_t A, std::int64_t B, std::int64_t C, std::int64_t N, const std::string& mode) {
        return chi_m(mm, {A, B, C}, N, mode == "definition" ? ChiMode::definition : ChiMode::product);
      },
      py::arg("m"), py::arg("A"), py::arg("B"), py::arg("C"), py::arg("N"), py::arg("mode") = "product");

  m.def(
      "xi",
      [](const IntMatrix& gram, const std::vector<std::string>& alpha, const std::vector<std::string>& beta,
         std::int64_t ell, std::int64_t mm, std::int64_t n, std::int64_t c) {
        const EvenLattice L(gram);
        return to_string(xi(L, element(L, alpha), element(L, beta), ell, mm, n, c));
      },
      py::arg("gram"), py::arg("alpha"), py::arg("beta"), py::arg("ell"), py::arg("m"), py::arg("n"), py::arg("c"));

  m.def("weil_bound_rhs", &weil_bound_rhs, py::arg("c"), py::arg("v"), py::arg("m0"), py::arg("n"));

  m.def(
      "rho",
      [](const IntMatrix& gram, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, int branch,
         int prec_bits) {
        const DiscGroup G{EvenLattice(gram)};
        const auto mat = rho_generators(G, MetaplecticElement(a, b, c, d, branch), WordStrategy::nearest, prec_bits);
        std::vector<std::vector<std::complex<double>>> out(G.size());
        for (std::size_t i = 0; i < G.size(); ++i)
          for (std::size_t j = 0; j < G.size(); ++j) out[i].push_back(to_complex(mat(i, j)));
        return out;
      },
      py::arg("gram"), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"), py::arg("branch") = 1,
      py::arg("prec_bits") = kDefaultPrecBits);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::main_with_args(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
