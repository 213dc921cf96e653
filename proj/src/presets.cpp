#include <string>

#include "eemit/cli.hpp"

namespace eemit::cli {

namespace {

const std::string kLienard =
    "kind=L1\nalpha=0.45\nbeta=0.5\ngamma=0.5\nf1=0.2\nomega1=0.7315\n";
const std::string kLienardDual =
    "kind=L2\nalpha=0.45\nbeta=0.5\ngamma=0.5\nf1=0.2\nomega1=0.7315\nomega2=1.0\n";
const std::string kParabola =
    "kind=NP1\nomega0_sq=0.25\nlambda=0.5\nalpha=0.2\nf1=3.1665\nomega1=1.0\n";
// The second-forcing frequency for the dual-forced parabola is taken as 5.99865.
const std::string kParabolaDual =
    "kind=NP2\nomega0_sq=0.25\nlambda=0.5\nalpha=0.2\nf1=3.1665\nomega1=1.0\nomega2=5.99865\n";
// The origin is invariant when f1 = f2 = A = 0, so start off it.
const std::string kParametric =
    "kind=NP3\nomega0_sq=0.25\nlambda=0.5\nalpha=0.2\nomega1=1.0\nomega2=1.0\n"
    "Omega0_sq=6.7\nepsilon=0.081\nomega_p=1.0\nx0=0.1\ny0=0.1\n";
const std::string kMultistable =
    "kind=LM\nalpha=0.0135\nbeta=0.8111\ngamma=-2.65\nf1=2.0\nomega1=0.762\nomega2=1.0\n";
const std::string kMultistableEe =
    "kind=LM\nalpha=0.45\nbeta=0.5\ngamma=-0.5\nf1=0.2\nomega1=0.7315\nomega2=1.0\n";

// Single-point study: full-length statistics plus a short trajectory window
// for the time series and phase portrait.
std::vector<PresetRun> point_study(const std::string& base, const std::string& extra, const std::string& length) {
  return {{"stats", Command::Stats, base + extra + length},
          {"trajectory", Command::Simulate, base + extra + "record_steps=30000\n"}};
}

std::string axis(const std::string& name, double lo, double hi, int points) {
  return "axis1=" + name + "\naxis1_lo=" + format_number(lo) + "\naxis1_hi=" + format_number(hi) +
         "\naxis1_points=" + std::to_string(points) + "\n";
}

std::string axis2(const std::string& name, double lo, double hi, int points) {
  return "axis2=" + name + "\naxis2_lo=" + format_number(lo) + "\naxis2_hi=" + format_number(hi) +
         "\naxis2_points=" + std::to_string(points) + "\n";
}

std::vector<Preset> build() {
  std::vector<Preset> p;
  const std::string lienard_len = "record_steps=2000000\n";
  const std::string parabola_len = "record_steps=20000000\n";
  const std::string scan_bif = "collect=probability,d_max,bif_maxima\n";

  p.push_back({"fig1a", "Lienard, A=0: time series, phase portrait, peak PDF", point_study(kLienard, "A=0\n", lienard_len)});
  p.push_back({"fig1b", "Lienard, A=0.0001", point_study(kLienard, "A=0.0001\n", lienard_len)});
  p.push_back({"fig1c", "Lienard, A=0.001", point_study(kLienard, "A=0.001\n", lienard_len)});
  const std::string fig2 = kLienard + axis("A", 0.0, 0.001, 41) + lienard_len + scan_bif;
  for (const char* name : {"fig2", "fig2a", "fig2b", "fig2c"}) {
    p.push_back({name, "Lienard: bifurcation, EE probability and d_max against A", {{"", Command::Scan1d, fig2}}});
  }

  p.push_back({"fig3a", "parabola, A=0", point_study(kParabola, "A=0\n", parabola_len)});
  p.push_back({"fig3b", "parabola, A=0.01", point_study(kParabola, "A=0.01\n", parabola_len)});
  p.push_back({"fig3c", "parabola, A=0.02", point_study(kParabola, "A=0.02\n", parabola_len)});
  p.push_back({"fig4", "parabola: bifurcation, EE probability and d_max against A",
               {{"", Command::Scan1d, kParabola + axis("A", 0.0, 0.08, 81) + lienard_len + scan_bif}}});

  p.push_back({"fig5a", "Lienard: EE probability over (f1, A)",
               {{"", Command::Scan2d, kLienard + axis("f1", 0.18, 0.22, 21) + axis2("A", 0.0, 0.001, 21)}}});
  p.push_back({"fig5b", "parabola: EE probability over (f1, A)",
               {{"", Command::Scan2d, kParabola + axis("f1", 3.0, 3.3, 21) + axis2("A", 0.0, 0.08, 21)}}});

  p.push_back({"fig6a", "dual-forced Lienard, f2=0", point_study(kLienardDual, "f2=0\n", lienard_len)});
  p.push_back({"fig6b", "dual-forced Lienard, f2=0.0001", point_study(kLienardDual, "f2=0.0001\n", lienard_len)});
  p.push_back({"fig6c", "dual-forced Lienard, f2=0.001", point_study(kLienardDual, "f2=0.001\n", lienard_len)});
  p.push_back({"fig7", "dual-forced Lienard: EE probability and d_max against f2",
               {{"", Command::Scan1d, kLienardDual + axis("f2", 0.0, 0.001, 41) + lienard_len + scan_bif}}});

  p.push_back({"fig8a", "dual-forced parabola, f2=0", point_study(kParabolaDual, "f2=0\n", parabola_len)});
  p.push_back({"fig8b", "dual-forced parabola, f2=0.04", point_study(kParabolaDual, "f2=0.04\n", parabola_len)});
  p.push_back({"fig8c", "dual-forced parabola, f2=0.8", point_study(kParabolaDual, "f2=0.8\n", parabola_len)});
  p.push_back({"fig9", "dual-forced parabola: EE probability and d_max against f2",
               {{"", Command::Scan1d, kParabolaDual + axis("f2", 0.0, 1.5, 31) + lienard_len + scan_bif}}});

  p.push_back({"fig10a", "dual-forced Lienard: EE probability over (f1, f2)",
               {{"", Command::Scan2d, kLienardDual + axis("f1", 0.18, 0.22, 21) + axis2("f2", 0.0, 0.001, 21)}}});
  p.push_back({"fig10b", "dual-forced parabola: EE probability over (f1, f2)",
               {{"", Command::Scan2d, kParabolaDual + axis("f1", 3.0, 3.3, 21) + axis2("f2", 0.0, 1.5, 21)}}});

  {
    Preset phase{"fig11", "dual-forced parabola: EE probability against f2 for several phases", {}};
    const std::pair<const char*, const char*> phases[] = {
        {"phi_0", "0"}, {"phi_pi4", "0.78539816339744828"}, {"phi_pi2", "1.5707963267948966"}, {"phi_pi", "3.1415926535897931"}};
    for (const auto& [dir, value] : phases) {
      phase.runs.push_back({dir, Command::Scan1d, kParabolaDual + "phi=" + value + "\n" + axis("f2", 0.0, 1.5, 31)});
    }
    p.push_back(std::move(phase));
  }
  p.push_back({"fig12a", "dual-forced Lienard with A=0.0001: EE probability against f2",
               {{"", Command::Scan1d, kLienardDual + "A=0.0001\n" + axis("f2", 0.0, 0.001, 41) + lienard_len}}});
  p.push_back({"fig12b", "dual-forced parabola with A=0.06: EE probability against f2",
               {{"", Command::Scan1d, kParabolaDual + "A=0.06\n" + axis("f2", 0.0, 0.5, 26) + lienard_len}}});

  const std::string parametric_len = "record_steps=10000000\n";
  p.push_back({"fig13a", "parametric drive, f1=f2=0: EE probability against A",
               {{"", Command::Scan1d, kParametric + "f1=0\nf2=0\n" + axis("A", 0.0, 0.08, 17) + parametric_len}}});
  p.push_back({"fig13b", "parametric drive, A=0, f1=0.5: EE probability against f2",
               {{"", Command::Scan1d, kParametric + "f1=0.5\nA=0\n" + axis("f2", 0.0, 1.5, 31) + parametric_len}}});
  p.push_back({"fig13c", "parametric drive, f1=0.5, f2=0.1: EE probability against A",
               {{"", Command::Scan1d, kParametric + "f1=0.5\nf2=0.1\n" + axis("A", 0.0, 0.08, 17) + parametric_len}}});

  auto portraits = [](const std::string& base, const std::string& ic1, const std::string& ic2) {
    return std::vector<PresetRun>{
        {"ic0", Command::Simulate, base + "x0=" + ic1.substr(0, ic1.find(',')) + "\ny0=" + ic1.substr(ic1.find(',') + 1) +
                                       "\ntransient_steps=0\nrecord_steps=50000\n"},
        {"ic1", Command::Simulate, base + "x0=" + ic2.substr(0, ic2.find(',')) + "\ny0=" + ic2.substr(ic2.find(',') + 1) +
                                       "\ntransient_steps=0\nrecord_steps=50000\n"},
        {"mle", Command::Mle, base + "ics=" + ic1 + ";" + ic2 + "\n"}};
  };
  p.push_back({"fig14a", "multistable Lienard: phase portraits and exponents for two initial conditions",
               portraits(kMultistable, "1.8,1.6", "1.67,-2.02")});
  p.push_back({"fig14b", "Lienard (EE parameters, multistability form): two initial conditions",
               portraits(kMultistableEe, "0.5,0.5", "1.67,-2.02")});

  const std::string lm_scan = "collect=probability,d_max,bif_maxima,mle\nrecord_steps=200000\nmle_total_steps=1000000\n";
  p.push_back({"fig15a", "multistable Lienard: bifurcation and exponent against omega1, A and f2",
               {{"omega1", Command::Scan1d, kMultistable + "ics=1.8,1.6;1.67,-2.02\n" + axis("omega1", 0.70, 0.80, 51) + lm_scan},
                {"bias", Command::Scan1d, kMultistable + "ics=1.8,1.6;1.67,-2.02\n" + axis("A", 0.0, 3.0, 31) + lm_scan},
                {"forcing", Command::Scan1d, kMultistable + "ics=1.8,1.6;1.67,-2.02\n" + axis("f2", 0.0, 1.0, 21) + lm_scan}}});
  p.push_back({"fig15b", "Lienard (EE parameters): bifurcation and exponent against omega1, A and f2",
               {{"omega1", Command::Scan1d, kMultistableEe + "ics=0.5,0.5;1.67,-2.02\n" + axis("omega1", 0.70, 0.76, 31) + lm_scan},
                {"bias", Command::Scan1d, kMultistableEe + "ics=0.5,0.5;1.67,-2.02\n" + axis("A", 0.0, 0.5, 26) + lm_scan},
                {"forcing", Command::Scan1d, kMultistableEe + "ics=0.5,0.5;1.67,-2.02\n" + axis("f2", 0.0, 0.5, 26) + lm_scan}}});

  const std::string basin = "omega1=0.758\nbasin_nx=100\nbasin_ny=100\n";
  auto lm_basin = kMultistable.substr(0, kMultistable.find("omega1=")) + "omega2=1.0\n";
  p.push_back({"fig16a", "multistable Lienard basin, omega1=0.758", {{"", Command::Basin, lm_basin + basin}}});
  p.push_back({"fig16b", "multistable Lienard basin with constant bias A=3", {{"", Command::Basin, lm_basin + basin + "A=3\n"}}});
  p.push_back({"fig16c", "multistable Lienard basin with second forcing f2=1", {{"", Command::Basin, lm_basin + basin + "f2=1\n"}}});
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = build();
  return all;
}

const Preset* find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

}  // namespace eemit::cli
