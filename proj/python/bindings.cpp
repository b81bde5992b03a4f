#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wavephy/bitpipe.hpp"
#include "wavephy/channel.hpp"
#include "wavephy/config.hpp"
#include "wavephy/estimator.hpp"
#include "wavephy/modem.hpp"
#include "wavephy/ofdm.hpp"
#include "wavephy/params.hpp"
#include "wavephy/sim.hpp"

namespace py = pybind11;
using namespace wavephy;

namespace {

PilotScheme scheme_by_name(const std::string& name, const FftGeometry& geom) {
  if (name == "standard4") return PilotScheme::standard4();
  if (name == "regular4") return derive_regular_pattern(geom, 4);
  if (name == "extended6") return PilotScheme::extended6();
  throw std::invalid_argument("unknown pilot scheme: " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "802.11p OFDM baseband simulator core";

  py::enum_<Modulation>(m, "Modulation")
      .value("BPSK", Modulation::Bpsk)
      .value("QPSK", Modulation::Qpsk)
      .value("QAM16", Modulation::Qam16)
      .value("QAM64", Modulation::Qam64);

  py::enum_<CodeRate>(m, "CodeRate")
      .value("R12", CodeRate::R12)
      .value("R23", CodeRate::R23)
      .value("R34", CodeRate::R34);

  py::enum_<EstMethod>(m, "EstMethod")
      .value("LS", EstMethod::Ls)
      .value("MMSE", EstMethod::Mmse)
      .value("PERFECT", EstMethod::Perfect);

  py::enum_<Interpolation>(m, "Interpolation")
      .value("LINEAR", Interpolation::Linear)
      .value("DFT", Interpolation::DftBased);

  py::enum_<ChannelKind>(m, "ChannelKind")
      .value("AWGN", ChannelKind::Awgn)
      .value("RAYLEIGH_TDL", ChannelKind::RayleighTdl);

  py::class_<FftGeometry>(m, "FftGeometry")
      .def(py::init(&FftGeometry::ieee80211p))
      .def_static("ieee80211p", &FftGeometry::ieee80211p)
      .def("n_used", &FftGeometry::n_used)
      .def_readwrite("fft_size", &FftGeometry::fft_size)
      .def_readwrite("used_indices", &FftGeometry::used_indices)
      .def_readwrite("cp_len", &FftGeometry::cp_len)
      .def_readwrite("subcarrier_spacing_hz", &FftGeometry::subcarrier_spacing_hz);

  py::class_<PilotScheme>(m, "PilotScheme")
      .def(py::init([](const std::string& name) {
             return scheme_by_name(name, FftGeometry::ieee80211p());
           }),
           py::arg("name"))
      .def(py::init([](std::vector<int> positions) {
             PilotScheme s;
             s.positions = std::move(positions);
             std::sort(s.positions.begin(), s.positions.end());
             s.values.assign(s.positions.size(), cplx(1.0, 0.0));
             return s;
           }),
           py::arg("positions"))
      .def_static("standard4", &PilotScheme::standard4)
      .def_static("extended6", &PilotScheme::extended6)
      .def_readonly("positions", &PilotScheme::positions)
      .def_readonly("values", &PilotScheme::values)
      .def_property_readonly(
          "name", [](const PilotScheme& s) { return pattern_name(s.name); });

  m.def("max_unestimated_run", &max_unestimated_run, py::arg("geometry"),
        py::arg("pilots"));
  m.def("derive_regular_pattern", &derive_regular_pattern, py::arg("geometry"),
        py::arg("n_pilots"));
  m.def(
      "spectral_efficiency",
      [](const PilotScheme& s, const FftGeometry& g) {
        auto sef = spectral_efficiency_pilots(s, g);
        return py::make_tuple(sef.n_pilots, sef.n_used, sef.n_data);
      },
      py::arg("pilots"), py::arg("geometry"));

  m.def("scramble", &scramble, py::arg("bits"), py::arg("init_state"));
  m.def("conv_encode", &conv_encode, py::arg("bits"));
  m.def(
      "puncture",
      [](const BitVec& b, CodeRate r) { return puncture(b, PunctureMap::for_rate(r)); },
      py::arg("bits"), py::arg("rate"));
  m.def(
      "depuncture",
      [](const BitVec& b, CodeRate r) { return depuncture(b, PunctureMap::for_rate(r)); },
      py::arg("bits"), py::arg("rate"));
  m.def("interleave", &interleave, py::arg("bits"), py::arg("modulation"));
  m.def("deinterleave", &deinterleave, py::arg("bits"), py::arg("modulation"));
  m.def("viterbi_decode", &viterbi_decode, py::arg("coded"));

  m.def("map_bits", &map_bits, py::arg("bits"), py::arg("modulation"));
  m.def("demap_hard", &demap_hard, py::arg("symbols"), py::arg("modulation"));

  m.def("doppler_hz", &doppler_hz, py::arg("speed_kmh"), py::arg("carrier_hz"));

  py::class_<BerRecord>(m, "BerRecord")
      .def_readonly("snr_db", &BerRecord::snr_db)
      .def_readonly("bits", &BerRecord::bits)
      .def_readonly("bit_errors", &BerRecord::bit_errors)
      .def_readonly("seed", &BerRecord::seed)
      .def_readonly("max_unestimated_run", &BerRecord::max_unestimated_run)
      .def_readonly("sef", &BerRecord::sef)
      .def_readonly("ebn0_db", &BerRecord::ebn0_db)
      .def_readonly("error", &BerRecord::error)
      .def_property_readonly("ber", &BerRecord::ber)
      .def_property_readonly(
          "pilot_scheme", [](const BerRecord& r) { return r.pilot_scheme; })
      .def("__repr__", [](const BerRecord& r) {
        return "<BerRecord " + to_csv_row(r) + ">";
      });

  m.def(
      "run_point",
      [](const std::string& modulation, const std::string& code_rate,
         const std::string& pilot_scheme, const std::string& estimator,
         const std::string& channel, double snr_db, std::uint64_t bits,
         std::uint64_t seed, bool uncoded, const std::string& interpolation) {
        std::map<std::string, std::string> keys = {
            {"modulation", modulation},   {"code_rate", code_rate},
            {"pilot_scheme", pilot_scheme}, {"estimator", estimator},
            {"channel", channel},         {"bits", std::to_string(bits)},
            {"seed", std::to_string(seed)},
            {"uncoded", uncoded ? "true" : "false"},
            {"interpolation", interpolation},
            {"snr", std::to_string(snr_db)}};
        SweepPlan plan = plan_from_keys(keys);
        PhyConfig cfg = plan.base;
        cfg.total_bits = plan.bits_per_point;
        return run_point(cfg, snr_db);
      },
      py::arg("modulation") = "bpsk", py::arg("code_rate") = "1/2",
      py::arg("pilot_scheme") = "standard4", py::arg("estimator") = "mmse",
      py::arg("channel") = "awgn", py::arg("snr_db") = 10.0,
      py::arg("bits") = 10000, py::arg("seed") = 1, py::arg("uncoded") = false,
      py::arg("interpolation") = "linear");

  m.def("csv_header", &csv_header);
  m.def("to_csv_row", &to_csv_row);
}
