// unproj: ideal calculator and verification driver for the generic Type III
// unprojection family.
//
// Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage or
// parse error, 3 timeout.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "unproj/unproj.hpp"

namespace {

using namespace unproj;

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitTimeout = 3;
constexpr int kDefaultMaxN = 4;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string sub;
  std::string in;
  std::string out;
  std::string order;
  std::string field = "q";
  double timeout = 0;  // seconds; 0 = unlimited for compute commands
  std::size_t max_pairs = 0;
  // ideal names and inline polynomials
  std::string ideal, left, right, num, den, poly, by, vars, denominator, eliminate;
  std::vector<std::string> images;
  // family / verify
  int n = 0;
  std::string check;
  int max_n = -1;
  unsigned jobs = 0;
  bool no_timing = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out);
  if (!out) throw UsageError("cannot write " + o.out);
  out << text;
}

Budget make_budget(const Options& o) {
  Budget b = o.timeout > 0 ? Budget::seconds(o.timeout) : Budget::unlimited();
  if (o.max_pairs > 0) b.max_pairs = o.max_pairs;
  return b;
}

std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  for (auto& v : detail::split(s, ','))
    if (!v.empty()) out.push_back(v);
  return out;
}

int max_n(const Options& o) {
  if (o.max_n >= 0) return o.max_n;
  if (const char* env = std::getenv("UNPROJ_MAX_N")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError("UNPROJ_MAX_N must be an integer");
    }
  }
  return kDefaultMaxN;
}

void check_n(const Options& o) {
  if (o.n < 1) throw UsageError("--n must be at least 1");
  if (o.n > max_n(o))
    throw UsageError("--n " + std::to_string(o.n) + " exceeds the cap of " + std::to_string(max_n(o)) +
                     " (raise it with --max-n or UNPROJ_MAX_N)");
}

template <CoefficientField F>
std::string print_ideal(const Ideal<F>& ideal, const Budget& budget) {
  auto basis = groebner_basis(ideal, budget);
  return print_problem_file(*basis.ring, {{"result", basis.elements}});
}

template <CoefficientField F>
struct Loaded {
  ProblemFile<F> file;

  const Ideal<F>& ideal(const std::string& name) const {
    if (name.empty()) {
      if (file.ideals.empty()) throw UsageError("input file declares no ideals");
      return file.ideals.front().second;
    }
    if (auto* p = file.find(name)) return *p;
    throw UsageError("no ideal named '" + name + "' in the input");
  }

  Polynomial<F> poly(const std::string& text, const char* flag) const {
    try {
      return parse_polynomial(text, file.ring);
    } catch (const ParseError& e) {
      throw UsageError(std::string(flag) + ": parse error at " + e.what());
    }
  }
};

template <CoefficientField F>
Loaded<F> load(const Options& o, const F& field) {
  if (o.in.empty()) throw UsageError("--in is required");
  Loaded<F> l{parse_problem_file<F>(read_file(o.in), field)};
  if (!o.order.empty()) {
    OrderKind kind;
    if (o.order == "lex") kind = OrderKind::lex;
    else if (o.order == "grevlex") kind = OrderKind::grevlex;
    else throw UsageError("--order must be lex or grevlex");
    auto ring = with_order(*l.file.ring, MonomialOrder::simple(kind, l.file.ring->size()));
    for (auto& [name, ideal] : l.file.ideals) ideal = detail::rebase(ideal, ring);
    l.file.ring = ring;
  }
  return l;
}

template <CoefficientField F>
int run_compute(const Options& o, const F& field) {
  auto l = load(o, field);
  const Budget budget = make_budget(o);
  const auto& sub = o.sub;
  if (sub == "gb") {
    write_output(o, print_ideal(l.ideal(o.ideal), budget));
  } else if (sub == "nf") {
    if (o.poly.empty()) throw UsageError("nf needs --poly");
    auto basis = groebner_basis(l.ideal(o.ideal), budget);
    write_output(o, print_polynomial(normal_form(l.poly(o.poly, "--poly"), basis.elements, budget)) + "\n");
  } else if (sub == "intersect") {
    write_output(o, print_ideal(intersect(l.ideal(o.left), l.ideal(o.right), budget), budget));
  } else if (sub == "colon") {
    write_output(o, print_ideal(quotient(l.ideal(o.num), l.ideal(o.den), budget), budget));
  } else if (sub == "saturate") {
    if (o.by.empty()) throw UsageError("saturate needs --by");
    write_output(o, print_ideal(saturate(l.ideal(o.ideal), l.poly(o.by, "--by"), budget), budget));
  } else if (sub == "eliminate") {
    write_output(o, print_ideal(eliminate(l.ideal(o.ideal), split_names(o.vars), budget), budget));
  } else if (sub == "dim") {
    write_output(o, std::to_string(dimension(l.ideal(o.ideal), budget)) + "\n");
  } else if (sub == "kernel") {
    const auto& target = l.file.ring;
    if (o.images.empty()) throw UsageError("kernel needs at least one --image NAME=POLY");
    std::vector<std::pair<std::string, Polynomial<F>>> images;
    std::vector<std::string> source_vars;
    for (const auto& spec : o.images) {
      auto eq = spec.find('=');
      if (eq == std::string::npos) throw UsageError("--image takes NAME=POLY");
      std::string name = detail::trim(spec.substr(0, eq));
      if (!is_identifier(name)) throw UsageError("malformed variable name '" + name + "' in --image");
      if (target->find(name)) throw UsageError("--image variable '" + name + "' already exists in the ring");
      source_vars.push_back(name);
      images.emplace_back(name, l.poly(spec.substr(eq + 1), "--image"));
    }
    auto x_vars = split_names(o.eliminate);
    for (const auto& v : target->variables())
      if (std::find(x_vars.begin(), x_vars.end(), v) == x_vars.end()) source_vars.push_back(v);
    for (const auto& v : x_vars) target->index(v);
    OrderKind kind = o.order == "lex" ? OrderKind::lex : OrderKind::grevlex;
    auto source = make_ring(field, source_vars, kind);
    std::optional<Polynomial<F>> den;
    if (!o.denominator.empty()) den = l.poly(o.denominator, "--denominator");
    std::optional<Ideal<F>> modulus;
    if (!o.ideal.empty()) modulus = l.ideal(o.ideal);
    AlgebraMap<F> map(source, target, images, den, modulus);
    write_output(o, print_ideal(algebra_map_kernel(map, budget), budget));
  } else {
    throw UsageError("unknown subcommand " + sub);
  }
  return kExitOk;
}

template <CoefficientField F>
int run_family(const Options& o, const F& field) {
  check_n(o);
  write_output(o, family_problem_file(build_generic_family<F>(o.n, field)));
  return kExitOk;
}

template <CoefficientField F>
int run_verify(const Options& o, const F& field) {
  check_n(o);
  if (o.timeout <= 0) throw UsageError("--timeout must be positive");
  std::vector<std::string> ids;
  if (!o.check.empty()) {
    if (!is_check_id(o.check)) throw UsageError("unknown check id '" + o.check + "'");
    ids.push_back(o.check);
  }
  auto report = verify_all<F>(o.n, field, [&o] { return make_budget(o); }, ids, o.jobs);
  if (o.no_timing)
    for (auto& c : report.checks) c.elapsed_ms = 0;
  write_output(o, emit_report(report));
  bool any_fail = false, any_timeout = false;
  for (const auto& c : report.checks) {
    any_fail |= c.status == CheckStatus::fail;
    any_timeout |= c.status == CheckStatus::timeout;
  }
  if (any_fail) return kExitFail;
  return any_timeout ? kExitTimeout : kExitOk;
}

template <CoefficientField F>
int dispatch(const Options& o, const F& field) {
  if (o.sub == "family") return run_family(o, field);
  if (o.sub == "verify") return run_verify(o, field);
  return run_compute(o, field);
}

int run(const Options& o) {
  if (o.field == "q") return dispatch(o, RationalField{});
  if (o.field.rfind("fp:", 0) == 0) {
    unsigned long p = 0;
    try {
      std::size_t used = 0;
      p = std::stoul(o.field.substr(3), &used);
      if (used != o.field.size() - 3) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw UsageError("--field fp:P needs a numeric prime P");
    }
    if (p > 0xffffffffUL || p < 3 || !is_prime(p)) throw UsageError("--field fp:P needs an odd prime P below 2^32");
    return dispatch(o, PrimeField(static_cast<std::uint32_t>(p)));
  }
  throw UsageError("--field must be q or fp:P");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner-basis ideal calculator and generic Type III unprojection verifier", "unproj"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s, bool needs_input) {
    if (needs_input) {
      s->add_option("--in", o.in, "Problem file")->required();
      s->add_option("--order", o.order, "Override the ring order (lex|grevlex)");
      s->add_option("--timeout", o.timeout, "Wall-clock limit in seconds");
    }
    s->add_option("--field", o.field, "Coefficient field: q or fp:P");
    s->add_option("--max-pairs", o.max_pairs, "Cap on S-pairs per Groebner computation (0: no cap)");
    s->add_option("--out", o.out, "Write the result here instead of stdout");
  };

  auto* gb = app.add_subcommand("gb", "Reduced Groebner basis of an ideal");
  common(gb, true);
  gb->add_option("--ideal", o.ideal, "Ideal name (default: the first one)");

  auto* nf = app.add_subcommand("nf", "Normal form of a polynomial modulo an ideal");
  common(nf, true);
  nf->add_option("--ideal", o.ideal, "Ideal name");
  nf->add_option("--poly", o.poly, "Polynomial text")->required();

  auto* inter = app.add_subcommand("intersect", "Intersection of two ideals");
  common(inter, true);
  inter->add_option("--left", o.left, "First ideal")->required();
  inter->add_option("--right", o.right, "Second ideal")->required();

  auto* colon = app.add_subcommand("colon", "Colon ideal NUM : DEN");
  common(colon, true);
  colon->add_option("--num", o.num, "Numerator ideal")->required();
  colon->add_option("--den", o.den, "Denominator ideal")->required();

  auto* sat = app.add_subcommand("saturate", "Saturation I : g^inf");
  common(sat, true);
  sat->add_option("--ideal", o.ideal, "Ideal name");
  sat->add_option("--by", o.by, "Polynomial g")->required();

  auto* elim = app.add_subcommand("eliminate", "Elimination ideal");
  common(elim, true);
  elim->add_option("--ideal", o.ideal, "Ideal name");
  elim->add_option("--vars", o.vars, "Comma-separated variables to eliminate")->required();

  auto* ker = app.add_subcommand("kernel", "Kernel of an algebra map into (ring/I)[1/d]");
  common(ker, true);
  ker->add_option("--ideal", o.ideal, "Modulus ideal of the target (default: zero)");
  ker->add_option("--image", o.images, "NAME=POLY for a new source variable (repeatable)")->required();
  ker->add_option("--denominator", o.denominator, "Common denominator of the images");
  ker->add_option("--eliminate", o.eliminate, "Comma-separated target-only variables");

  auto* dim = app.add_subcommand("dim", "Krull dimension of ring/I");
  common(dim, true);
  dim->add_option("--ideal", o.ideal, "Ideal name");

  auto* fam = app.add_subcommand("family", "Write the generic family as a problem file");
  common(fam, false);
  fam->add_option("--n", o.n, "Family size")->required();
  fam->add_option("--max-n", o.max_n, "Override the cap on n");

  auto* ver = app.add_subcommand("verify", "Run the verification checks");
  common(ver, false);
  ver->add_option("--n", o.n, "Family size")->required();
  ver->add_option("--check", o.check, "Run a single check id");
  ver->add_option("--timeout", o.timeout, "Per-check wall-clock limit in seconds (default 600)");
  ver->add_option("--max-n", o.max_n, "Override the cap on n");
  ver->add_option("--jobs", o.jobs, "Worker threads (default: hardware concurrency)");
  ver->add_flag("--no-timing", o.no_timing, "Report elapsed_ms as 0 for reproducible output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  o.sub = app.get_subcommands().front()->get_name();
  // compute commands default to no time limit, verify to 600 s per check
  if (o.sub == "verify" && ver->count("--timeout") == 0) o.timeout = 600;

  try {
    return run(o);
  } catch (const ParseError& e) {
    std::cerr << "unproj: " << o.in << ": parse error at " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "unproj: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Timeout& e) {
    std::cerr << "unproj: timeout: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const std::invalid_argument& e) {
    std::cerr << "unproj: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "unproj: error: " << e.what() << "\n";
    return kExitFail;
  }
}
