#pragma once

#include "regions.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace uniq {

enum class Paint : std::uint8_t { vertical_hatch, horizontal_hatch, oblique_hatch, left_slash, fill };

/* One legend entry. `area` is painted cell by cell; `curve` is evaluated
 * along each critical curve and drawn as a polyline where it holds. */
struct Layer {
	std::string label;
	Paint paint = Paint::fill;
	std::string color;
	std::optional<Target> area;
	std::optional<Target> curve;
	bool dashed = false;
};

struct FigureSpec {
	int n = 3;
	Rational alpha_max = 4;
	Rational step = Rational(1, 64);
	std::vector<Layer> layers; // paint order
	std::string title;

	std::vector<std::string> legend() const
	{
		std::vector<std::string> out;
		for (const auto &l : layers)
			out.push_back(l.label);
		return out;
	}
};

namespace palette {
inline constexpr const char *kato = "#1f4e9c";
inline constexpr const char *furioli_terraneo = "#6b3fa0";
inline constexpr const char *rogers = "#2b7a78";
inline constexpr const char *win_tsutsumi = "#d62728";
inline constexpr const char *new_subcritical = "#2ca02c";
inline constexpr const char *new_critical = "#f2c500";
inline constexpr const char *open = "#333333";
} // namespace palette

/* The layer set of the published region maps: literature results, the
 * new subcritical and critical regions, and the open parts. Dimensions
 * n >= 6 omit Furioli-Terraneo and Win-Tsutsumi. */
inline FigureSpec figure_spec(int n, const Rational &step = Rational(1, 64))
{
	if (n < 3)
		throw error("figure: n must be >= 3 (got " + std::to_string(n) + ")");
	FigureSpec f;
	f.n = n;
	f.alpha_max = alpha_max(n);
	f.step = step;
	f.title = n >= 6 ? (n == 6 ? "Cases n >= 6" : "Case n = " + std::to_string(n) + " (n >= 6)") : "Case n = " + std::to_string(n);
	auto T = [](const char *t) { return std::optional<Target>(Target::parse(t)); };
	f.layers.push_back({"Kato", Paint::vertical_hatch, palette::kato, T("kato"), std::nullopt, false});
	if (n <= 5)
		f.layers.push_back({"Furioli-Terraneo", Paint::horizontal_hatch, palette::furioli_terraneo, T("furioli-terraneo"),
		                    std::nullopt, false});
	f.layers.push_back({"Rogers", Paint::oblique_hatch, palette::rogers, T("rogers"), std::nullopt, false});
	if (n <= 5)
		f.layers.push_back({"Win-Tsutsumi", Paint::fill, palette::win_tsutsumi, T("win-tsutsumi-sub"),
		                    T("win-tsutsumi-crit|cazenave-crit"), false});
	f.layers.push_back({"New: subcritical", Paint::fill, palette::new_subcritical, T("thm11|thm12"), std::nullopt, false});
	f.layers.push_back({"New: critical", Paint::fill, palette::new_critical, std::nullopt, T("thm15|thm16"), false});
	f.layers.push_back({"Open", Paint::left_slash, palette::open, T("open-sub"), T("open-crit"), true});
	return f;
}

/* Grid matching f: s in [0, 1], alpha in [0, alpha_max]. */
inline GridSpec figure_grid(const FigureSpec &f) { return {f.n, 0, 1, 0, f.alpha_max, f.step}; }

/* Area targets of f, in layer order. */
inline std::vector<Target> figure_targets(const FigureSpec &f)
{
	std::vector<Target> out;
	for (const auto &l : f.layers)
		if (l.area)
			out.push_back(*l.area);
	return out;
}

namespace detail {

struct Canvas {
	static constexpr int left = 70, top = 50, width = 640, height = 480, legend_w = 220, bottom = 60;

	Rational amax;
	std::string x(const Rational &s) const { return (Rational(left) + Rational(width) * s).decimal(2); }
	std::string y(const Rational &a) const { return (Rational(top) + Rational(height) * (1 - a / amax)).decimal(2); }
	std::string w(const Rational &ds) const { return (Rational(width) * ds).decimal(2); }
	std::string h(const Rational &da) const { return (Rational(height) * da / amax).decimal(2); }
};

inline std::string fill_ref(const Layer &l, std::size_t k)
{
	return l.paint == Paint::fill ? l.color : "url(#layer" + std::to_string(k) + ")";
}

inline void pattern_def(std::ostringstream &os, const Layer &l, std::size_t k)
{
	if (l.paint == Paint::fill)
		return;
	os << "    <pattern id=\"layer" << k << "\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\">\n";
	const char *d = "";
	switch (l.paint) {
	case Paint::vertical_hatch: d = "M4,0 L4,8"; break;
	case Paint::horizontal_hatch: d = "M0,4 L8,4"; break;
	case Paint::oblique_hatch: d = "M0,8 L8,0 M-2,2 L2,-2 M6,10 L10,6"; break;
	default: d = "M0,0 L8,8 M-2,6 L2,10 M6,-2 L10,2"; break;
	}
	os << "      <path d=\"" << d << "\" stroke=\"" << l.color << "\" stroke-width=\"1.2\"/>\n";
	os << "    </pattern>\n";
}

inline std::string xml_escape(const std::string &s)
{
	std::string out;
	for (char c : s) {
		switch (c) {
		case '&': out += "&amp;"; break;
		case '<': out += "&lt;"; break;
		case '>': out += "&gt;"; break;
		case '"': out += "&quot;"; break;
		default: out += c;
		}
	}
	return out;
}

} // namespace detail

/* Standalone SVG. Raster layers paint one rectangle per run of true cells
 * along s (cells centred on lattice points, clipped to the axes); curve
 * layers are polylines through the lattice values of s where the target
 * holds on alpha = 4/(n-2s) or alpha = (n+2s)/(n-2s). */
inline std::string render_figure(const FigureSpec &f, const RegionGrid &g)
{
	const auto &sp = g.s_points();
	const auto &ap = g.alpha_points();
	if (g.spec().n != f.n || sp.empty() || ap.empty() || sp.front() > 0 || sp.back() < 1 || ap.front() > 0 ||
	    ap.back() < f.alpha_max)
		throw error("render_figure: grid does not cover the figure axes");

	detail::Canvas c{f.alpha_max};
	const Rational half = g.spec().step / 2;
	std::ostringstream os;
	const int W = c.left + c.width + c.legend_w, H = c.top + c.height + c.bottom;
	os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
	os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' '
	   << H << "\">\n";
	os << "  <defs>\n";
	for (std::size_t k = 0; k < f.layers.size(); ++k)
		detail::pattern_def(os, f.layers[k], k);
	os << "    <clipPath id=\"plot\"><rect x=\"" << c.left << "\" y=\"" << c.top << "\" width=\"" << c.width
	   << "\" height=\"" << c.height << "\"/></clipPath>\n";
	os << "  </defs>\n";
	os << "  <rect width=\"" << W << "\" height=\"" << H << "\" fill=\"#ffffff\"/>\n";
	os << "  <text x=\"" << c.left + c.width / 2 << "\" y=\"30\" font-family=\"sans-serif\" font-size=\"18\" "
	   << "text-anchor=\"middle\">" << detail::xml_escape(f.title) << "</text>\n";

	for (std::size_t k = 0; k < f.layers.size(); ++k) {
		const Layer &l = f.layers[k];
		os << "  <g id=\"layer-" << k << "\" clip-path=\"url(#plot)\">\n";
		if (l.area) {
			std::size_t t = g.target_index(l.area->str());
			std::string fill = detail::fill_ref(l, k);
			for (std::size_t j = 0; j < ap.size(); ++j) {
				for (std::size_t i = 0; i < sp.size();) {
					if (g.at(i, j, t) != Status::T) {
						++i;
						continue;
					}
					std::size_t e = i;
					while (e + 1 < sp.size() && g.at(e + 1, j, t) == Status::T)
						++e;
					Rational x0 = sp[i] - half, x1 = sp[e] + half, a1 = ap[j] + half;
					os << "    <rect x=\"" << c.x(x0) << "\" y=\"" << c.y(a1) << "\" width=\"" << c.w(x1 - x0)
					   << "\" height=\"" << c.h(g.spec().step) << "\" fill=\"" << fill << "\"";
					if (l.paint == Paint::fill)
						os << " fill-opacity=\"0.55\"";
					os << "/>\n";
					i = e + 1;
				}
			}
		}
		if (l.curve) {
			for (Curve cv : {Curve::energy, Curve::distributional}) {
				std::vector<std::pair<Rational, Rational>> run;
				auto flush = [&] {
					if (run.empty())
						return;
					os << "    <polyline fill=\"none\" stroke=\"" << l.color << "\" stroke-width=\"" << (l.dashed ? 4 : 3)
					   << "\"";
					if (l.dashed)
						os << " stroke-dasharray=\"10 6\"";
					os << " points=\"";
					for (std::size_t q = 0; q < run.size(); ++q)
						os << (q ? " " : "") << c.x(run[q].first) << ',' << c.y(run[q].second);
					if (run.size() == 1) // a lone point: draw a short tick
						os << ' ' << c.x(run[0].first) << ',' << c.y(run[0].second);
					os << "\"/>\n";
					run.clear();
				};
				for (const auto &s : sp) {
					Rational a = curve_alpha(cv, f.n, s);
					bool on = a <= f.alpha_max && evaluate(*l.curve, {f.n, s, a}) == Status::T;
					if (on)
						run.emplace_back(s, a);
					else
						flush();
				}
				flush();
			}
		}
		os << "  </g>\n";
	}

	// axes
	os << "  <g id=\"axes\" font-family=\"sans-serif\" font-size=\"12\">\n";
	os << "    <rect x=\"" << c.left << "\" y=\"" << c.top << "\" width=\"" << c.width << "\" height=\"" << c.height
	   << "\" fill=\"none\" stroke=\"#000000\"/>\n";
	for (int k = 0; k <= 4; ++k) {
		Rational s(k, 4), a = f.alpha_max * Rational(k, 4);
		os << "    <line x1=\"" << c.x(s) << "\" y1=\"" << c.top + c.height << "\" x2=\"" << c.x(s) << "\" y2=\""
		   << c.top + c.height + 5 << "\" stroke=\"#000000\"/>\n";
		os << "    <text x=\"" << c.x(s) << "\" y=\"" << c.top + c.height + 20 << "\" text-anchor=\"middle\">" << s
		   << "</text>\n";
		os << "    <line x1=\"" << c.left - 5 << "\" y1=\"" << c.y(a) << "\" x2=\"" << c.left << "\" y2=\"" << c.y(a)
		   << "\" stroke=\"#000000\"/>\n";
		os << "    <text x=\"" << c.left - 8 << "\" y=\"" << c.y(a) << "\" text-anchor=\"end\" dominant-baseline=\"middle\">"
		   << a << "</text>\n";
	}
	os << "    <text x=\"" << c.left + c.width / 2 << "\" y=\"" << c.top + c.height + 45 << "\" text-anchor=\"middle\">s</text>\n";
	os << "    <text x=\"" << c.left - 45 << "\" y=\"" << c.top + c.height / 2 << "\" text-anchor=\"middle\">alpha</text>\n";
	os << "  </g>\n";

	// legend
	os << "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"13\">\n";
	for (std::size_t k = 0; k < f.layers.size(); ++k) {
		const Layer &l = f.layers[k];
		int y = c.top + 10 + static_cast<int>(k) * 28;
		int x = c.left + c.width + 20;
		os << "    <rect x=\"" << x << "\" y=\"" << y << "\" width=\"24\" height=\"16\" fill=\"" << detail::fill_ref(l, k)
		   << "\" stroke=\"" << l.color << "\"/>\n";
		if (l.dashed)
			os << "    <line x1=\"" << x << "\" y1=\"" << y + 8 << "\" x2=\"" << x + 24 << "\" y2=\"" << y + 8 << "\" stroke=\""
			   << l.color << "\" stroke-width=\"3\" stroke-dasharray=\"6 3\"/>\n";
		os << "    <text class=\"legend-label\" x=\"" << x + 32 << "\" y=\"" << y + 13 << "\">"
		   << detail::xml_escape(l.label) << "</text>\n";
	}
	os << "  </g>\n";
	os << "</svg>\n";
	return os.str();
}

/* Scan and render in one step. */
inline std::string figure_svg(int n, const Rational &step = Rational(1, 64), unsigned threads = scan_threads())
{
	FigureSpec f = figure_spec(n, step);
	RegionGrid g = scan(figure_grid(f), figure_targets(f), threads);
	return render_figure(f, g);
}

} // namespace uniq
