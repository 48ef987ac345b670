#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qtorus/qtorus.hpp"

namespace {

using namespace qtorus;

std::string format_row(const std::vector<i64>& row) {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < row.size(); ++i) os << (i ? ", " : "") << row[i];
  os << "]";
  return os.str();
}

std::string format_matrix(const IntMat& m) {
  std::ostringstream os;
  os << "[";
  for (i64 i = 0; i < m.rows(); ++i) os << (i ? ", " : "") << format_row(m.row(i));
  os << "]";
  return os.str();
}

std::string generator_list(const std::vector<ExponentVector>& gens) {
  std::ostringstream os;
  for (size_t i = 0; i < gens.size(); ++i)
    os << (i ? ", " : "") << "z" << (i + 1) << " = " << monomial_to_string(gens[i]);
  return os.str();
}

void print_report(const StructureReport& rep) {
  std::cout << "n = " << rep.n << ", ell = " << rep.ell << "\n";
  std::cout << "h = " << format_matrix(rep.h) << "\n";
  std::cout << "PI degree: " << rep.pi_degree << "  (image cardinality " << rep.image_cardinality
            << ")\n";
  std::cout << "Azumaya (theorem-derived, not verified): degree " << rep.azumaya_degree << "\n";
  std::cout << "S basis rows (HNF): " << format_matrix(rep.s_basis) << "\n";
  std::cout << "lambdas: " << format_row(rep.lambdas) << "\n";
  std::cout << "positive diagonal basis: " << (rep.positive_diagonal ? "yes" : "no") << "\n";
  if (rep.positive_diagonal) {
    std::cout << "Z(L): Laurent series ring in " << generator_list(rep.center_of_l.generators)
              << "\n";
    std::cout << "Z(R): power series ring in " << generator_list(rep.center_of_r.generators)
              << "\n";
    std::cout << "UFR(L): yes   UFR(R): yes\n";
  } else {
    std::cout << "Z(L): no series-ring description (criterion not met)\n";
    std::cout << "Z(R): no series-ring description (criterion not met)\n";
    std::cout << "UFR(L): criterion not met   UFR(R): criterion not met\n";
  }
  if (rep.warnings.empty()) {
    std::cout << "warnings: (none)\n";
  } else {
    std::cout << "warnings:\n";
    for (const auto& w : rep.warnings) std::cout << "  - " << w << "\n";
  }
}

void write_or_print_json(const Json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw ConfigError("cannot write output file: " + out_path);
  out << text;
}

SeriesContextPtr context_from_config(const AnalysisConfig& cfg) {
  CommutationData cd = CommutationData::validate(cfg.n, cfg.ell, cfg.h);
  return make_series_context(std::move(cd), cfg.field);
}

struct CheckPrinter {
  bool all_ok = true;

  void run(const std::string& name, const std::function<void()>& body) {
    try {
      body();
      std::cout << "pass  " << name << "\n";
    } catch (const BudgetError&) {
      std::cout << "skip  " << name << " (enumeration budget)\n";
    } catch (const std::exception& e) {
      std::cout << "FAIL  " << name << ": " << e.what() << "\n";
      all_ok = false;
    }
  }
};

void require(bool cond, const std::string& message) {
  if (!cond) throw InternalError(message);
}

void run_verify(const AnalysisConfig& cfg) {
  CommutationData cd = CommutationData::validate(cfg.n, cfg.ell, cfg.h);
  StructureReport rep = analyze(cfg);
  LatticeBasis basis = kernel_lattice(cd);
  CheckPrinter checks;

  checks.run("image cardinality: enumeration agrees with the normal-form formula", [&] {
    require(brute_image_cardinality(cd) == rep.image_cardinality, "image cardinality mismatch");
  });
  checks.run("diagonal criterion: fundamental-box scan agrees with the index test", [&] {
    require(brute_diagonal_check(cd) == rep.positive_diagonal, "diagonal verdict mismatch");
  });
  checks.run("kernel membership: box enumeration agrees with basis solve", [&] {
    auto support = brute_central_support(cd, cd.ell());
    ExponentVector lo(static_cast<size_t>(cd.n()), -cd.ell());
    ExponentVector hi(static_cast<size_t>(cd.n()), cd.ell());
    ExponentVector s = lo;
    for (;;) {
      require(basis.contains(s) == (support.count(s) > 0), "membership mismatch at " + format_row(s));
      if (!detail::next_point(s, lo, hi)) break;
    }
  });
  checks.run("PI degree squared equals the image cardinality", [&] {
    require(rep.pi_degree * rep.pi_degree == rep.image_cardinality, "pi degree inconsistent");
  });
  checks.run("basis rows lie in the kernel and the index matches", [&] {
    for (i64 i = 0; i < basis.n(); ++i)
      require(in_kernel(cd, basis.rows().row(i)), "basis row outside kernel");
    require(basis.index() == rep.image_cardinality, "basis index mismatch");
  });
  checks.run("presentation scaling invariance (c = 2, 3)", [&] {
    for (i64 c : {2, 3}) {
      IntMat scaled = cd.h();
      for (i64 i = 0; i < scaled.rows(); ++i)
        for (i64 j = 0; j < scaled.cols(); ++j) scaled(i, j) *= c;
      CommutationData cds = CommutationData::validate(cd.n(), c * cd.ell(), scaled);
      require(kernel_lattice(cds).rows() == basis.rows(), "scaled basis differs");
      require(image_cardinality(cds) == rep.image_cardinality, "scaled cardinality differs");
      require(positive_diagonal_decision(cds).is_positive_diagonal == rep.positive_diagonal,
              "scaled verdict differs");
    }
  });
  checks.run("monomial commutation law on a sample", [&] {
    auto ctx = make_series_context(cd, cfg.field);
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<i64> coord(-3, 3);
    for (int it = 0; it < 100; ++it) {
      ExponentVector s(static_cast<size_t>(cd.n())), t(static_cast<size_t>(cd.n()));
      for (auto& v : s) v = coord(rng);
      for (auto& v : t) v = coord(rng);
      auto xs = SkewSeries::monomial(ctx, s, ctx->field.one());
      auto xt = SkewSeries::monomial(ctx, t, ctx->field.one());
      auto rhs = series_scale(ctx->field.root_power(sigma_exponent(cd, s, t)), xt * xs);
      require(value_equal(xs * xt, rhs), "commutation law violated");
    }
  });
  checks.run("series associativity on a sample", [&] {
    auto ctx = make_series_context(cd, cfg.field);
    std::mt19937_64 rng(789);
    std::uniform_int_distribution<i64> coord(0, 2);
    std::uniform_int_distribution<i64> pw(-4, 4);
    auto random_series = [&] {
      SkewSeries f = SkewSeries::zero(ctx);
      for (int t = 0; t < 4; ++t) {
        ExponentVector e(static_cast<size_t>(cd.n()));
        for (auto& v : e) v = coord(rng);
        f = f + SkewSeries::monomial(ctx, e, ctx->field.root_power(pw(rng)));
      }
      return series_truncate(f, 5);
    };
    for (int it = 0; it < 20; ++it) {
      SkewSeries f = random_series(), g = random_series(), h = random_series();
      require((f * g) * h == f * (g * h), "associativity violated");
    }
  });
  checks.run("inverse round trip on a unit sample", [&] {
    auto ctx = make_series_context(cd, cfg.field);
    SkewSeries u = SkewSeries::one(ctx);
    for (i64 i = 0; i < cd.n(); ++i) u = u + SkewSeries::variable(ctx, i);
    SkewSeries g = series_invert(u, 6);
    require(value_equal(u * g, SkewSeries::one(ctx)), "right inverse failed");
    require(value_equal(g * u, SkewSeries::one(ctx)), "left inverse failed");
  });

  if (!checks.all_ok) throw InternalError("verification suite found failures");
  std::cout << "all checks passed\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structure of q-commutative power and Laurent series rings at a root of unity"};
  app.require_subcommand(1);

  std::string config_path, json_path, lhs_path, rhs_path, in_path, out_path, check_kind;
  i64 precision = 0, box_radius = 0;

  auto* analyze_cmd = app.add_subcommand("analyze", "full structure report for a config");
  analyze_cmd->add_option("--config", config_path, "config JSON file")->required();
  analyze_cmd->add_option("--json", json_path, "also write the machine-readable report here");

  auto* pi_cmd = app.add_subcommand("pi-degree", "print the PI degree");
  pi_cmd->add_option("--config", config_path)->required();

  auto* basis_cmd = app.add_subcommand("center-basis", "print the HNF basis of the central sublattice");
  basis_cmd->add_option("--config", config_path)->required();

  auto* mul_cmd = app.add_subcommand("mul", "multiply two series files");
  mul_cmd->add_option("--config", config_path)->required();
  mul_cmd->add_option("--lhs", lhs_path, "left factor series file")->required();
  mul_cmd->add_option("--rhs", rhs_path, "right factor series file")->required();
  mul_cmd->add_option("--out", out_path, "write the product here instead of stdout");

  auto* inv_cmd = app.add_subcommand("invert", "invert a series file");
  inv_cmd->add_option("--config", config_path)->required();
  inv_cmd->add_option("--in", in_path, "series file")->required();
  inv_cmd->add_option("--precision", precision, "target part precision")->required();
  inv_cmd->add_option("--out", out_path, "write the inverse here instead of stdout");

  auto* central_cmd = app.add_subcommand("is-central", "test whether a series is central");
  central_cmd->add_option("--config", config_path)->required();
  central_cmd->add_option("--in", in_path, "series file")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "run a brute-force check against the main path");
  oracle_cmd->add_option("--config", config_path)->required();
  oracle_cmd->add_option("--check", check_kind, "image | kernel | diagonal")->required();
  oracle_cmd->add_option("--box-radius", box_radius, "box radius for the kernel check (default ell)");

  auto* verify_cmd = app.add_subcommand("verify", "run the full invariant suite on a config");
  verify_cmd->add_option("--config", config_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      StructureReport rep = analyze(cfg);
      print_report(rep);
      if (!json_path.empty()) write_or_print_json(report_to_json(rep), json_path);
    } else if (pi_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      CommutationData cd = CommutationData::validate(cfg.n, cfg.ell, cfg.h);
      std::cout << pi_degree(cd) << "\n";
    } else if (basis_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      CommutationData cd = CommutationData::validate(cfg.n, cfg.ell, cfg.h);
      LatticeBasis basis = kernel_lattice(cd);
      DiagonalVerdict verdict = positive_diagonal_decision(cd);
      for (i64 i = 0; i < basis.n(); ++i) {
        auto row = basis.rows().row(i);
        std::cout << "b" << (i + 1) << " = " << format_row(row) << "   z" << (i + 1) << " = "
                  << monomial_to_string(row) << "\n";
      }
      std::cout << "positive diagonal: " << (verdict.is_positive_diagonal ? "yes" : "no") << "\n";
      if (verdict.witness)
        std::cout << "witness outside the diagonal sublattice: " << format_row(*verdict.witness)
                  << "\n";
    } else if (mul_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      auto ctx = context_from_config(cfg);
      SkewSeries lhs = load_series_file(ctx, lhs_path);
      SkewSeries rhs = load_series_file(ctx, rhs_path);
      write_or_print_json(series_to_json(lhs * rhs), out_path);
    } else if (inv_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      auto ctx = context_from_config(cfg);
      SkewSeries f = load_series_file(ctx, in_path);
      write_or_print_json(series_to_json(series_invert(f, precision)), out_path);
    } else if (central_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      auto ctx = context_from_config(cfg);
      SkewSeries f = load_series_file(ctx, in_path);
      std::cout << (is_central(f) ? "true" : "false") << "\n";
    } else if (oracle_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      CommutationData cd = CommutationData::validate(cfg.n, cfg.ell, cfg.h);
      if (check_kind == "image") {
        i64 brute = brute_image_cardinality(cd);
        i64 formula = image_cardinality(cd);
        std::cout << "enumerated image cardinality: " << brute << "\n";
        std::cout << "normal-form image cardinality: " << formula << "\n";
        if (brute != formula) throw InternalError("image cardinality mismatch");
        std::cout << "agree\n";
      } else if (check_kind == "kernel") {
        i64 r = box_radius > 0 ? box_radius : cd.ell();
        auto support = brute_central_support(cd, r);
        LatticeBasis basis = kernel_lattice(cd);
        ExponentVector lo(static_cast<size_t>(cd.n()), -r), hi(static_cast<size_t>(cd.n()), r);
        ExponentVector s = lo;
        i64 points = 0;
        for (;;) {
          if (basis.contains(s) != (support.count(s) > 0))
            throw InternalError("kernel membership mismatch at " + format_row(s));
          ++points;
          if (!detail::next_point(s, lo, hi)) break;
        }
        std::cout << "checked " << points << " box points, " << support.size()
                  << " central; agree\n";
      } else if (check_kind == "diagonal") {
        bool brute = brute_diagonal_check(cd);
        bool formula = positive_diagonal_decision(cd).is_positive_diagonal;
        std::cout << "enumerated verdict: " << (brute ? "yes" : "no") << "\n";
        std::cout << "index-test verdict: " << (formula ? "yes" : "no") << "\n";
        if (brute != formula) throw InternalError("diagonal verdict mismatch");
        std::cout << "agree\n";
      } else {
        std::cerr << "unknown --check kind: " << check_kind << " (expected image, kernel, or diagonal)\n";
        return 2;
      }
    } else if (verify_cmd->parsed()) {
      AnalysisConfig cfg = load_config_file(config_path);
      run_verify(cfg);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
