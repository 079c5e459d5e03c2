#ifndef MULCHSIM_WEATHER_HPP
#define MULCHSIM_WEATHER_HPP

#include <iosfwd>
#include <vector>

#include "mulchsim/physics.hpp"

namespace mulchsim::weather {

struct WeatherSample {
    double t;   // seconds since series start
    double R_s; // solar shortwave [W/m^2]
    double T_a; // air temperature [K]
    double v;   // wind speed [m/s]
};

// Plausibility envelope enforced on every sample, parsed or synthesized.
inline constexpr double kMaxSolar = 1500.0;
inline constexpr double kMinAirTempK = 200.0;
inline constexpr double kMaxAirTempK = 350.0;
inline constexpr double kMaxWind = 60.0;

// Time-ordered meteorological series with a nominal sample cadence.
// Timestamps are strictly increasing and no gap exceeds twice the cadence.
struct WeatherSeries {
    std::vector<WeatherSample> samples;
    double cadence = 0.0; // nominal spacing [s]

    double t_begin() const { return samples.front().t; }
    double t_end() const { return samples.back().t; }
    void validate() const;
};

enum class TempUnit { Celsius, Kelvin };

// CSV schema: header "t_s,Rs_Wm2,Ta_C,v_ms" (or "Ta_K" for Kelvin input),
// one sample per row, '.' decimal point, '#' comment lines ignored,
// LF or CRLF. Cadence is taken as the median inter-sample gap.
WeatherSeries parse_weather_csv(std::istream& in);
std::string serialize_weather_csv(const WeatherSeries& series, TempUnit unit = TempUnit::Celsius);

// Linear interpolation between bracketing samples; no extrapolation.
physics::BoundaryEnvironment sample_at(const WeatherSeries& series, double t);

// One synthetic cloud-free day: solar follows a clipped half-sine over a
// 12 h window centered on solar noon (day_length / 2); air temperature is
// sinusoidal around T_mean peaking 2 h after solar noon; wind constant.
// Samples at t = 0, cadence, ..., day_length - cadence.
WeatherSeries synthesize_clear_day(double day_length, double R_peak, double T_mean,
                                   double T_amplitude, double v_const, double cadence);

// `days` concatenated clear-day cycles whose daily mean temperature is
// modulated by annual_T_amplitude * sin(2 pi day / 365).
WeatherSeries synthesize_typical_year(double day_length, double R_peak, double T_mean,
                                      double T_amplitude, double v_const, double cadence,
                                      double annual_T_amplitude, int days);

} // namespace mulchsim::weather

#endif
