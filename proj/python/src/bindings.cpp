#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "diagprod/almostrep.hpp"
#include "diagprod/characters.hpp"
#include "diagprod/growth.hpp"
#include "diagprod/limits.hpp"
#include "diagprod/marked.hpp"

namespace py = pybind11;
using namespace diagprod;

namespace {

DiagSpec make_spec(const std::string& base, const std::string& d_rule,
                   const std::string& r_rule, int levels, bool admissible) {
  if (base == "classical")
    return DiagSpec::classical(SeqRule::parse(d_rule), levels);
  return DiagSpec::lamplighter(SeqRule::parse(d_rule), SeqRule::parse(r_rule),
                               levels, admissible);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "diagonal products of alternating groups: exact permutation and "
            "character arithmetic, ball enumeration, stability experiments";

  py::class_<Perm>(m, "Perm")
      .def(py::init<int>(), py::arg("degree"))
      .def_static("parse", &Perm::parse, py::arg("degree"), py::arg("cycles"))
      .def_static("from_images", &Perm::from_images)
      .def("__call__", &Perm::operator())
      .def("__mul__", [](const Perm& a, const Perm& b) { return a * b; })
      .def("__eq__", [](const Perm& a, const Perm& b) { return a == b; })
      .def("inverse", &Perm::inverse)
      .def("sign", &Perm::sign)
      .def("is_even", &Perm::is_even)
      .def("support", &Perm::support)
      .def("degree", &Perm::degree)
      .def("cycle_type",
           [](const Perm& p) { return p.cycle_type().as_partition(); })
      .def("__str__", &Perm::to_cycle_string)
      .def("__repr__", [](const Perm& p) {
        return "Perm(" + std::to_string(p.degree()) + ", \"" +
               p.to_cycle_string() + "\")";
      });

  m.def("neumann_generators", &neumann_generators, py::arg("d"), py::arg("r"),
        py::arg("n"));

  m.def(
      "bekka_window",
      [](int k) {
        const auto y = shift_commutator(bekka_witness(k));
        return py::make_tuple(2L * k * k, 2L * k * k + 2 * k + 2, y.support());
      },
      py::arg("k"),
      "support window of [shift, x_k]: (lo, hi, support)");

  m.def(
      "mn_value",
      [](const Partition& lam, const Partition& mu) {
        return shared_engine().mn_value(lam, mu);
      },
      py::arg("lam"), py::arg("mu"),
      "irreducible Sym character value via Murnaghan-Nakayama");
  m.def("hook_dimension", &hook_dimension);
  m.def("partitions_of", &partitions_of);

  m.def(
      "alt_normalized_value",
      [](const Partition& lam, const Partition& type) {
        const auto chars = AltChar::restrict_to_alt(lam);
        std::vector<std::complex<double>> out;
        AltClass c;
        c.type = type;
        c.rep = canonical_of_type(type);
        for (const auto& ch : chars)
          out.push_back(ch.normalized(c).to_complex());
        return out;
      },
      py::arg("lam"), py::arg("type"),
      "normalized Alt character value(s); two entries for a split pair");

  m.def("sym_table_csv", &sym_table_csv);
  m.def("alt_table_csv", &alt_table_csv);

  m.def(
      "ball_sizes",
      [](const std::string& base, const std::string& d_rule,
         const std::string& r_rule, int levels, bool admissible, int radius) {
        const auto spec = make_spec(base, d_rule, r_rule, levels, admissible);
        DiagMarking mk(spec);
        const auto b = ball(mk, radius);
        std::vector<std::size_t> sizes;
        std::size_t total = 0;
        for (auto s : b.table.level_sizes) {
          total += s;
          sizes.push_back(total);
        }
        return sizes;
      },
      py::arg("base") = "classical", py::arg("d") = "list:5,7,9",
      py::arg("r") = "const:1", py::arg("levels") = 3,
      py::arg("admissible") = false, py::arg("radius") = 4);

  m.def(
      "embedding_radius",
      [](int d, int horizon) {
        return local_embedding_radius(AZMarking{}, classical_level_marking(d),
                                      horizon);
      },
      py::arg("d"), py::arg("horizon") = 8,
      "largest radius where the Alt(d) classical marking matches A(Z)");

  m.def(
      "classify_null",
      [](const std::string& base, const std::string& d_rule,
         const std::string& family, const std::string& word, int N,
         double eps_zero) {
        const auto spec = make_spec(base, d_rule, "const:1", 1, false);
        const CharFamily fam = family == "trivial"    ? CharFamily::trivial()
                               : family == "balanced" ? CharFamily::balanced()
                                                      : CharFamily::standard();
        const auto g =
            tail_map(from_word(spec, parse_word(word, spec.gen_labels())));
        const auto v = classify_null(spec, g, fam, N, eps_zero);
        py::dict out;
        out["verdict"] = v.kind_name();
        out["p_N"] = v.p_N;
        out["p_N_variant"] = v.p_N_variant;
        out["lower_bound"] = v.lower_bound;
        return out;
      },
      py::arg("base") = "classical", py::arg("d") = "arith:2,3",
      py::arg("family") = "standard", py::arg("word") = "t",
      py::arg("N") = 10000, py::arg("eps_zero") = 1e-9);

  m.def(
      "find_witness",
      [](const std::vector<long>& d, const std::vector<long>& r, int level,
         int radius) {
        const auto spec = DiagSpec::lamplighter(SeqRule::list(d),
                                                SeqRule::list(r), 3, true);
        const auto w = find_wn(spec, level, radius);
        py::dict out;
        out["found"] = w.has_value();
        if (w) {
          out["word"] = word_to_string(w->word, spec.gen_labels());
          out["length"] = w->length;
        }
        return out;
      },
      py::arg("d"), py::arg("r"), py::arg("level"), py::arg("radius"));

  m.def("admissible_params", [](const std::vector<long>& f, int levels) {
    const auto ap = admissible_params(f, levels);
    return py::make_tuple(ap.d, ap.r);
  });

  m.def(
      "stability_trial",
      [](int n, const std::string& rep_kind, double eps, unsigned long seed) {
        PermMarking mk({neumann_alpha(n), neumann_beta(n, 1)}, {"a", "b"});
        RepDomain dom(mk, 40);
        const AlmostRep rep = rep_kind == "permutation" ? permutation_rep(mk)
                                                        : standard_rep(mk);
        const auto rec = correct(perturb(rep, eps, seed), dom);
        double dist = 0;
        for (std::size_t i = 0; i < rep.gens.size(); ++i)
          dist = std::max(dist, d_hs(rec.rep.gens[i], rep.gens[i]));
        py::dict out;
        out["converged"] = rec.converged;
        out["iterations"] = rec.iterations;
        out["final_defect"] = rec.final_defect;
        out["max_generator_distance"] = dist;
        return out;
      },
      py::arg("n") = 5, py::arg("rep") = "standard", py::arg("eps") = 0.01,
      py::arg("seed") = 1);

  m.attr("__version__") = "0.1.0";
}
