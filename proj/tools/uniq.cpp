#include <uniq/render.hpp>
#include <uniq/report.hpp>
#include <uniq/verify.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace uniq;

namespace {

struct usage_error : error {
	using error::error;
};

Rational flag_rational(const std::string &flag, const std::string &text)
{
	try {
		return Rational::parse(text);
	} catch (const error &e) {
		throw usage_error(flag + ": " + e.what());
	}
}

ProblemParams flag_params(int n, const std::string &s, const std::string &alpha)
{
	ProblemParams p{n, flag_rational("--s", s), flag_rational("--alpha", alpha)};
	if (n < 2)
		throw usage_error("--n: must be >= 2 (got " + std::to_string(n) + ")");
	if (p.s.sign() <= 0 || p.s >= Rational(n, 2))
		throw usage_error("--s: must satisfy 0 < s < n/2 (got " + p.s.str() + ")");
	if (p.alpha.sign() <= 0)
		throw usage_error("--alpha: must be > 0 (got " + p.alpha.str() + ")");
	return p;
}

/* The flag a failing guard is about: the dimension if the scenario is tied
 * to another n, otherwise alpha. */
std::string guard_flag(ScenarioId id, int n)
{
	switch (id) {
	case ScenarioId::CriticalN2Low:
	case ScenarioId::CriticalN2High: return n == 2 ? "--alpha" : "--n";
	case ScenarioId::CriticalN3Mass:
	case ScenarioId::CriticalN3Energy: return n == 3 ? "--alpha" : "--n";
	case ScenarioId::CriticalHighDim: return n >= 4 ? "--alpha" : "--n";
	default: return "--alpha";
	}
}

void emit(const std::string &out, const std::string &text)
{
	if (out.empty() || out == "-") {
		std::cout << text;
		return;
	}
	std::ofstream f(out, std::ios::binary);
	if (!f)
		throw usage_error("--out: cannot open '" + out + "' for writing");
	f << text;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"Exponent feasibility engine and region calculator for NLS unconditional uniqueness"};
	app.set_version_flag("--version", std::string(tool_version()));
	app.require_subcommand(1);

	int n = 3;
	std::string s_text, a_text, target = "auto", out, step_text = "1/64", tol_text, suite = "all";
	std::vector<std::string> targets;
	std::string s_range, a_range;

	auto *check = app.add_subcommand("check", "Decide a scenario (or predicate) at (n, s, alpha); prints a verdict JSON");
	check->add_option("--n", n, "dimension")->required();
	check->add_option("--s", s_text, "regularity, rational")->required();
	check->add_option("--alpha", a_text, "nonlinearity power, rational")->required();
	check->add_option("--scenario", target, "scenario or predicate id, or auto");

	auto *sigma = app.add_subcommand("sigma", "Sigma window of a scenario: projection and closed form");
	sigma->add_option("--n", n, "dimension")->required();
	sigma->add_option("--s", s_text, "regularity")->required();
	sigma->add_option("--alpha", a_text, "nonlinearity power")->required();
	sigma->add_option("--scenario", target, "scenario id")->required();

	auto *region = app.add_subcommand("region", "Scan the (s, alpha) lattice; prints CSV");
	region->add_option("--n", n, "dimension")->required();
	region->add_option("--targets", targets, "comma-separated targets, e.g. thm11,subcritical-usual|subcritical-better")
	    ->required()
	    ->delimiter(',');
	region->add_option("--step", step_text, "lattice step");
	region->add_option("--s-range", s_range, "lo:hi (default 0:1)");
	region->add_option("--alpha-range", a_range, "lo:hi (default 0:alpha_max(n))");
	region->add_option("--out", out, "output file (default stdout)");

	auto *figure = app.add_subcommand("figure", "Render the layered region map as SVG");
	figure->add_option("--n", n, "dimension, 3, 4, 5 or >= 6")->required();
	figure->add_option("--step", step_text, "lattice step");
	figure->add_option("--out", out, "output file (default stdout)");

	auto *verify = app.add_subcommand("verify", "Run verification suites; report on stderr, JSON on stdout");
	verify->add_option("--suite", suite, "fm-oracle|witnesses|sigma-windows|coverage|chains|thresholds|all");

	auto *s0c = app.add_subcommand("s0", "Certified enclosure of the smallest root s0(n)");
	s0c->add_option("--n", n, "dimension >= 5")->required();
	s0c->add_option("--tol", tol_text, "enclosure width")->required();

	try {
		app.parse(argc, argv);
	} catch (const CLI::CallForHelp &e) {
		return app.exit(e);
	} catch (const CLI::CallForVersion &e) {
		return app.exit(e);
	} catch (const CLI::ParseError &e) {
		app.exit(e);
		return 2;
	}

	try {
		if (*check) {
			ProblemParams p = flag_params(n, s_text, a_text);
			VerdictDocument d;
			if (target == "auto") {
				d = check_auto(p);
			} else if (auto id = try_parse_scenario(target)) {
				if (auto g = failed_guard(*id, p))
					throw usage_error(guard_flag(*id, n) + ": guard of " + target + " fails: " + *g);
				d = check_scenario(*id, p);
			} else if (auto pid = try_parse_predicate(target)) {
				d = check_predicate(*pid, p);
			} else {
				throw usage_error("--scenario: unknown id '" + target + "'");
			}
			std::cout << dump(to_json(d));
			return d.feasible ? 0 : 1;
		}
		if (*sigma) {
			ProblemParams p = flag_params(n, s_text, a_text);
			auto id = try_parse_scenario(target);
			if (!id)
				throw usage_error("--scenario: unknown id '" + target + "'");
			if (auto g = failed_guard(*id, p))
				throw usage_error(guard_flag(*id, n) + ": guard of " + target + " fails: " + *g);
			std::cout << dump(sigma_json(*id, p, sigma_window(*id, p)));
			return 0;
		}
		if (*region) {
			if (n < 2)
				throw usage_error("--n: must be >= 2");
			Rational step = flag_rational("--step", step_text);
			auto range = [&](const std::string &flag, const std::string &text, Rational lo, Rational hi) {
				if (text.empty())
					return std::pair{lo, hi};
				auto c = text.find(':');
				if (c == std::string::npos)
					throw usage_error(flag + ": expected lo:hi");
				return std::pair{flag_rational(flag, text.substr(0, c)), flag_rational(flag, text.substr(c + 1))};
			};
			auto [slo, shi] = range("--s-range", s_range, 0, 1);
			auto [alo, ahi] = range("--alpha-range", a_range, 0, alpha_max(n));
			GridSpec g{n, slo, shi, alo, ahi, step};
			std::vector<Target> ts;
			try {
				g.validate();
				ts = parse_targets(targets);
			} catch (const parse_error &e) {
				throw usage_error(std::string("--targets: ") + e.what());
			} catch (const error &e) {
				throw usage_error(std::string("--step: ") + e.what());
			}
			emit(out, to_csv(scan(g, ts)));
			return 0;
		}
		if (*figure) {
			if (n < 3)
				throw usage_error("--n: figures exist for n >= 3");
			Rational step = flag_rational("--step", step_text);
			FigureSpec f = figure_spec(n, step);
			GridSpec g = figure_grid(f);
			try {
				g.validate();
			} catch (const error &e) {
				throw usage_error(std::string("--step: ") + e.what());
			}
			emit(out, render_figure(f, scan(g, figure_targets(f))));
			return 0;
		}
		if (*verify) {
			if (suite != "all" && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
				throw usage_error("--suite: unknown suite '" + suite + "'");
			auto results = run_suite(suite);
			for (const auto &r : results)
				std::cerr << text_report(r);
			json j = verify_json(suite, results);
			std::cout << dump(j);
			return j["passed"].get<bool>() ? 0 : 1;
		}
		if (*s0c) {
			if (n < 5)
				throw usage_error("--n: s0 is defined for n >= 5");
			Rational tol = flag_rational("--tol", tol_text);
			if (tol.sign() <= 0)
				throw usage_error("--tol: must be > 0");
			std::cout << dump(s0_json(n, tol, s0(n, tol)));
			return 0;
		}
	} catch (const usage_error &e) {
		std::cerr << "uniq: " << e.what() << '\n';
		return 2;
	} catch (const std::exception &e) {
		std::cerr << "uniq: error: " << e.what() << '\n';
		return 3;
	}
	return 2;
}
