// torimass: command-line front end for the mass computations and the
// verification suites.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <iterator>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "torimass/envelope.hpp"
#include "torimass/harness.hpp"
#include "torimass/json_io.hpp"

using namespace torimass;

namespace {

enum ExitCode { kOk = 0, kFailed = 1, kMalformed = 2 };

// Inline JSON when the argument starts with '{', stdin for "-", else a path.
Json load(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return parse_json(arg);
  if (arg == "-") return parse_json(std::string(std::istreambuf_iterator<char>(std::cin), {}));
  return read_json_file(arg);
}

void report_error(const char* kind, const std::string& message) {
  std::string escaped;
  for (char c : message) {
    if (c == '"' || c == '\\') escaped += '\\';
    escaped += c == '\n' ? ' ' : c;
  }
  std::cerr << "torimass: error kind=" << kind << " message=\"" << escaped << "\"\n";
}

Profile default_profile() {
  const char* env = std::getenv("TORIMASS_PROFILE");
  return env && *env ? parse_profile(env) : Profile::kRational;
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw InvalidInput("cannot write " + out);
  f << text;
}

template <class Fn>
void with_profile(Profile p, Fn&& fn) {
  if (p == Profile::kRational) {
    fn(Rational{});
  } else {
    fn(double{});
  }
}

std::vector<VerificationReport> run_suites(const std::string& suite, const SuiteConfig& config) {
  std::vector<VerificationReport> reports;
  if (suite == "all") {
    for (const auto& name : suite_names()) reports.push_back(run_suite(name, config));
  } else {
    reports.push_back(run_suite(suite, config));
  }
  return reports;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Masses of piecewise-linear convex functions and their verification suites"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  std::string profile_text;
  app.add_option("--profile", profile_text, "Arithmetic profile: rational or float (default $TORIMASS_PROFILE or rational)");

  std::string input, input_g;
  auto* mass = app.add_subcommand("mass", "Total Monge-Ampere mass (volume of the Newton polytope)");
  mass->add_option("function", input, "Function JSON: path, '-' or inline")->required();
  auto* measure = app.add_subcommand("measure", "Monge-Ampere measure as atoms");
  measure->add_option("function", input, "Function JSON")->required();
  auto* newton = app.add_subcommand("newton", "Newton polytope");
  newton->add_option("function", input, "Function JSON")->required();
  auto* compare = app.add_subcommand("compare", "Singularity order of f relative to g");
  compare->add_option("f", input, "Function JSON")->required();
  compare->add_option("g", input_g, "Function JSON")->required();

  std::size_t samples = 200000;
  std::uint64_t mc_seed = 1;
  auto* env_mass = app.add_subcommand("envelope-mass", "Gradient-image mass of the envelope G_N(u, v)");
  env_mass->add_option("spec", input, "Envelope JSON {\"u\", \"v\", \"N\"}")->required();
  env_mass->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
  env_mass->add_option("--seed", mc_seed, "Sampling seed")->capture_default_str();

  SuiteConfig config;
  config.jobs = std::max(1u, std::thread::hardware_concurrency());
  std::string suite, out, format = "json", report_in;
  auto add_suite_options = [&](CLI::App* cmd) {
    cmd->add_option("--seed", config.seed, "Suite seed")->capture_default_str();
    cmd->add_option("--cases", config.cases, "Number of cases (0 = suite default)")->capture_default_str();
    cmd->add_option("--tol", config.tol, "Relative tolerance of the keyprop check")->capture_default_str();
    cmd->add_option("--jobs", config.jobs, "Worker threads")->check(CLI::PositiveNumber);
    cmd->add_option("--samples", config.samples, "Monte Carlo samples per keyprop case")->capture_default_str();
    cmd->add_option("--out", out, "Write to a file instead of stdout");
  };
  auto* verify = app.add_subcommand("verify", "Run a verification suite and print its JSON report");
  verify->add_option("suite", suite, "monotonicity, keyprop, comparison, domination, limit or all")->required();
  add_suite_options(verify);
  auto* report = app.add_subcommand("report", "Run every suite, or re-render a saved report, as JSON or CSV");
  report->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  report->add_option("--in", report_in, "Existing JSON report to re-render");
  add_suite_options(report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kMalformed;
  }

  try {
    const Profile profile = profile_text.empty() ? default_profile() : parse_profile(profile_text);
    config.profile = profile;

    if (*mass) {
      const auto f = function_from_json(load(input));
      with_profile(profile, [&](auto s) {
        using S = decltype(s);
        std::cout << Arith<S>::format(total_mass(convert_function<S>(f))) << '\n';
      });
      return kOk;
    }
    if (*measure || *newton) {
      const auto f = function_from_json(load(input));
      with_profile(profile, [&](auto s) {
        using S = decltype(s);
        const auto fs = convert_function<S>(f);
        std::cout << (*measure ? to_json(ma_measure(fs)) : to_json(newton_polytope(fs))).dump(2) << '\n';
      });
      return kOk;
    }
    if (*compare) {
      const auto f = function_from_json(load(input)), g = function_from_json(load(input_g));
      with_profile(profile, [&](auto s) {
        using S = decltype(s);
        std::cout << to_string(compare_singularity(convert_function<S>(f), convert_function<S>(g))) << '\n';
      });
      return kOk;
    }
    if (*env_mass) {
      const auto e = envelope_from_json(load(input));
      with_profile(profile, [&](auto s) {
        using S = decltype(s);
        const EnvelopeFunction<S> es(convert_function<S>(e.u()), convert_function<S>(e.v()), e.big_n());
        std::cout << to_json(gradient_image_mass(es, samples, mc_seed)).dump(2) << '\n';
      });
      return kOk;
    }

    std::vector<VerificationReport> reports;
    Json metadata;
    if (*report && !report_in.empty()) {
      const Json doc = load(report_in);
      reports = reports_from_document(doc);
      if (doc.contains("metadata")) metadata = doc["metadata"];
    } else {
      const auto start = std::chrono::steady_clock::now();
      reports = run_suites(*verify ? suite : std::string("all"), config);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      metadata = Json{{"created_utc", utc_now()}, {"wall_seconds", secs}, {"jobs", config.jobs}};
    }
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass();
    if (*report && format == "csv") {
      emit(reports_to_csv(reports), out);
    } else {
      emit(report_document(reports, metadata).dump(2) + "\n", out);
    }
    if (!pass) {
      for (const auto& r : reports)
        if (!r.pass()) report_error("verification-failed", r.suite + ": " + std::to_string(r.failed()) + " case(s) failed");
      return kFailed;
    }
    return kOk;
  } catch (const InvalidInput& e) {
    report_error("malformed-input", e.what());
    return kMalformed;
  } catch (const DimensionMismatch& e) {
    report_error("malformed-input", e.what());
    return kMalformed;
  } catch (const SamplingError& e) {
    report_error("sampling", e.what());
    return kFailed;
  } catch (const std::exception& e) {
    report_error("internal", e.what());
    return kFailed;
  }
}
