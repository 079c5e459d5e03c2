#include "mulchsim/weather.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <string>

#include "mulchsim/errors.hpp"
#include "mulchsim/io_util.hpp"

namespace mulchsim::weather {

namespace {

void check_sample(const WeatherSample& s, long line) {
    auto fail = [&](const std::string& field, double value) {
        std::string msg = field + " = " + std::to_string(value) + " outside envelope";
        if (line > 0)
            msg += " (line " + std::to_string(line) + ")";
        throw ValidationError(msg);
    };
    if (!(s.R_s >= 0.0 && s.R_s <= kMaxSolar))
        fail("Rs_Wm2", s.R_s);
    if (!(s.T_a > kMinAirTempK && s.T_a < kMaxAirTempK))
        fail("Ta_K", s.T_a);
    if (!(s.v >= 0.0 && s.v <= kMaxWind))
        fail("v_ms", s.v);
}

double median_gap(const std::vector<WeatherSample>& samples) {
    std::vector<double> gaps;
    gaps.reserve(samples.size() - 1);
    for (size_t i = 1; i < samples.size(); ++i)
        gaps.push_back(samples[i].t - samples[i - 1].t);
    std::sort(gaps.begin(), gaps.end());
    return gaps[gaps.size() / 2];
}

} // namespace

void WeatherSeries::validate() const {
    if (samples.empty())
        throw ValidationError("weather series is empty");
    for (const auto& s : samples)
        check_sample(s, 0);
    if (samples.size() == 1)
        return;
    if (!(cadence > 0.0))
        throw ValidationError("weather series cadence must be positive");
    for (size_t i = 1; i < samples.size(); ++i) {
        const double gap = samples[i].t - samples[i - 1].t;
        if (gap <= 0.0)
            throw ValidationError("timestamps not strictly increasing at samples " +
                                  std::to_string(i - 1) + " and " + std::to_string(i));
        if (gap > 2.0 * cadence)
            throw ValidationError("gap of " + std::to_string(gap) + " s before sample " +
                                  std::to_string(i) + " exceeds twice the cadence");
    }
}

WeatherSeries parse_weather_csv(std::istream& in) {
    WeatherSeries series;
    std::string line;
    long lineno = 0;
    bool header_seen = false;
    TempUnit unit = TempUnit::Celsius;
    long prev_line = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const std::string t = io::trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        if (!header_seen) {
            if (t == "t_s,Rs_Wm2,Ta_C,v_ms")
                unit = TempUnit::Celsius;
            else if (t == "t_s,Rs_Wm2,Ta_K,v_ms")
                unit = TempUnit::Kelvin;
            else
                throw ParseError("unrecognized weather header '" + t + "'", lineno);
            header_seen = true;
            continue;
        }
        const auto fields = io::split(t, ',');
        if (fields.size() != 4)
            throw ParseError("expected 4 fields, got " + std::to_string(fields.size()), lineno);
        WeatherSample s;
        try {
            s.t = io::parse_double(fields[0], "t_s");
            s.R_s = io::parse_double(fields[1], "Rs_Wm2");
            s.T_a = io::parse_double(fields[2], unit == TempUnit::Celsius ? "Ta_C" : "Ta_K");
            s.v = io::parse_double(fields[3], "v_ms");
        } catch (const ValidationError& e) {
            throw ParseError(e.what(), lineno);
        }
        if (unit == TempUnit::Celsius)
            s.T_a = physics::to_kelvin(s.T_a);
        check_sample(s, lineno);
        if (!series.samples.empty() && s.t <= series.samples.back().t)
            throw ValidationError("timestamps not strictly increasing between lines " +
                                  std::to_string(prev_line) + " and " + std::to_string(lineno));
        series.samples.push_back(s);
        prev_line = lineno;
    }
    if (!header_seen)
        throw ParseError("missing weather header", lineno == 0 ? 1 : lineno);
    if (series.samples.empty())
        throw ValidationError("weather series is empty");
    if (series.samples.size() > 1)
        series.cadence = median_gap(series.samples);
    series.validate();
    return series;
}

std::string serialize_weather_csv(const WeatherSeries& series, TempUnit unit) {
    std::ostringstream out;
    out << (unit == TempUnit::Celsius ? "t_s,Rs_Wm2,Ta_C,v_ms" : "t_s,Rs_Wm2,Ta_K,v_ms") << "\n";
    for (const auto& s : series.samples) {
        const double T = unit == TempUnit::Celsius ? physics::to_celsius(s.T_a) : s.T_a;
        out << io::format_double(s.t) << ',' << io::format_double(s.R_s) << ','
            << io::format_double(T) << ',' << io::format_double(s.v) << "\n";
    }
    return out.str();
}

physics::BoundaryEnvironment sample_at(const WeatherSeries& series, double t) {
    if (series.samples.empty())
        throw ValidationError("weather series is empty");
    const auto& ss = series.samples;
    if (t < ss.front().t || t > ss.back().t)
        throw std::range_error("time " + std::to_string(t) + " s outside weather range [" +
                               std::to_string(ss.front().t) + ", " +
                               std::to_string(ss.back().t) + "]");
    auto it = std::lower_bound(ss.begin(), ss.end(), t,
                               [](const WeatherSample& s, double tv) { return s.t < tv; });
    if (it == ss.begin() || it->t == t)
        return {it->R_s, it->T_a, it->v};
    const auto& hi = *it;
    const auto& lo = *(it - 1);
    const double w = (t - lo.t) / (hi.t - lo.t);
    return {lo.R_s + w * (hi.R_s - lo.R_s), lo.T_a + w * (hi.T_a - lo.T_a),
            lo.v + w * (hi.v - lo.v)};
}

WeatherSeries synthesize_clear_day(double day_length, double R_peak, double T_mean,
                                   double T_amplitude, double v_const, double cadence) {
    return synthesize_typical_year(day_length, R_peak, T_mean, T_amplitude, v_const, cadence,
                                   0.0, 1);
}

WeatherSeries synthesize_typical_year(double day_length, double R_peak, double T_mean,
                                      double T_amplitude, double v_const, double cadence,
                                      double annual_T_amplitude, int days) {
    if (!(day_length > 0.0) || !(R_peak > 0.0) || !(T_mean > 0.0) || !(T_amplitude >= 0.0) ||
        !(v_const >= 0.0) || !(cadence > 0.0))
        throw ValidationError("synthesize: arguments must be positive");
    if (days < 1)
        throw ValidationError("synthesize: days must be >= 1");

    const double pi = std::acos(-1.0);
    const double noon = 0.5 * day_length;
    const double daylight = 43200.0; // 12 h
    const double sunrise = noon - 0.5 * daylight;
    const double temp_peak = noon + 7200.0; // 2 h after solar noon
    const long per_day = static_cast<long>(std::floor(day_length / cadence + 0.5));

    WeatherSeries series;
    series.cadence = cadence;
    series.samples.reserve(static_cast<size_t>(per_day) * days);
    for (int day = 0; day < days; ++day) {
        const double day_mean =
            T_mean + annual_T_amplitude * std::sin(2.0 * pi * day / 365.0);
        for (long i = 0; i < per_day; ++i) {
            const double t_day = static_cast<double>(i) * cadence;
            WeatherSample s;
            s.t = day * day_length + t_day;
            s.R_s = 0.0;
            if (t_day >= sunrise && t_day <= sunrise + daylight)
                s.R_s = std::max(0.0, R_peak * std::sin(pi * (t_day - sunrise) / daylight));
            s.T_a = day_mean +
                    T_amplitude * std::cos(2.0 * pi * (t_day - temp_peak) / day_length);
            s.v = v_const;
            series.samples.push_back(s);
        }
    }
    series.validate();
    return series;
}

} // namespace mulchsim::weather
