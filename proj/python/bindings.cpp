#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "dresslat/budget.hpp"
#include "dresslat/errors.hpp"
#include "dresslat/gate.hpp"
#include "dresslat/lattice.hpp"
#include "dresslat/open_system.hpp"
#include "dresslat/spin_register.hpp"

namespace py = pybind11;
using namespace dresslat;

namespace {

py::object to_python(const nlohmann::json& j)
{
    return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_dresslat, m)
{
    m.doc() = "Spin-dependent dressed lattices, lossy blockade gates and their decoherence budget.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<Species>(m, "Species")
        .def(py::init<>())
        .def_readwrite("name", &Species::name)
        .def_readwrite("mass_kg", &Species::mass_kg)
        .def_readwrite("clock_wavelength_m", &Species::clock_wavelength_m)
        .def_readwrite("zeeman_hz_per_gauss", &Species::zeeman_hz_per_gauss)
        .def_readwrite("p2_gradient_hz_per_cm_per_gauss_per_cm", &Species::p2_gradient_hz_per_cm_per_gauss_per_cm)
        .def_property(
            "nuclear_spin_2I", [](const Species& s) { return s.nuclear_spin.twice; },
            [](Species& s, int t) { s.nuclear_spin = HalfInteger::from_twice(t); })
        .def("clock_wavenumber", &Species::clock_wavenumber)
        .def("site_spacing_m", &Species::site_spacing_m);
    m.def("strontium87", &strontium87);
    m.def("load_species_preset", &load_species_preset, py::arg("path"));

    py::enum_<Qubit>(m, "Qubit").value("Zero", Qubit::Zero).value("One", Qubit::One);

    py::class_<DressingField>(m, "DressingField")
        .def(py::init([](double omega_peak, double detuning, double wavenumber, double phase, Qubit spin) {
                 return DressingField{omega_peak, detuning, wavenumber, phase, spin};
             }),
             py::arg("omega_peak"), py::arg("detuning"), py::arg("wavenumber"), py::arg("phase") = 0.0,
             py::arg("spin") = Qubit::Zero)
        .def_readwrite("omega_peak", &DressingField::omega_peak)
        .def_readwrite("detuning", &DressingField::detuning)
        .def_readwrite("wavenumber", &DressingField::wavenumber)
        .def_readwrite("phase", &DressingField::phase)
        .def_readwrite("spin", &DressingField::spin);

    py::class_<LatticeConfig>(m, "LatticeConfig")
        .def(py::init([](const Species& species, const DressingField& f0, const DressingField& f1, double stark_g,
                         double stark_e, bool include_offresonant) {
                 LatticeConfig c;
                 c.species = species;
                 c.field_0 = f0;
                 c.field_1 = f1;
                 c.stark = {stark_g, stark_e};
                 c.include_offresonant = include_offresonant;
                 c.validate();
                 return c;
             }),
             py::arg("species"), py::arg("field_0"), py::arg("field_1"), py::arg("stark_g") = 0.0,
             py::arg("stark_e") = 0.0, py::arg("include_offresonant") = true)
        .def_readwrite("field_0", &LatticeConfig::field_0)
        .def_readwrite("field_1", &LatticeConfig::field_1)
        .def_readwrite("include_offresonant", &LatticeConfig::include_offresonant)
        .def("lattice_period", &LatticeConfig::lattice_period);

    py::class_<PotentialSample>(m, "PotentialSample")
        .def_readonly("x", &PotentialSample::x)
        .def_readonly("v_lower", &PotentialSample::v_lower)
        .def_readonly("v_upper", &PotentialSample::v_upper)
        .def_readonly("admixture_e", &PotentialSample::admixture_e);

    m.def("adiabatic_potentials", &adiabatic_potentials, py::arg("config"), py::arg("spin"), py::arg("x"));
    m.def(
        "period_averaged_admixture",
        [](const LatticeConfig& c, Qubit spin, double phase, bool density_weighted) {
            return period_averaged_admixture(
                c, spin, phase, density_weighted ? AdmixtureWeight::GroundStateDensity : AdmixtureWeight::Uniform);
        },
        py::arg("config"), py::arg("spin"), py::arg("relative_phase"), py::arg("density_weighted") = false);
    m.def(
        "potential_scan",
        [](const LatticeConfig& c, const std::vector<double>& phases, int points_per_period, int periods) {
            const std::vector<double> grid = period_grid(c, points_per_period, periods);
            const std::vector<ScanRow> rows = potential_scan(c, phases, grid);
            py::list out;
            for (const auto& r : rows) {
                out.append(py::make_tuple(r.phase, index(r.spin), r.sample.x, r.sample.v_lower, r.sample.v_upper,
                                          r.sample.admixture_e));
            }
            return out;
        },
        py::arg("config"), py::arg("phases"), py::arg("points_per_period") = 256, py::arg("periods") = 1,
        "Rows of (phase, spin, x, v_lower, v_upper, admixture_e).");
    m.def("trap_frequency", &trap_frequency, py::arg("config"), py::arg("spin"));
    m.def(
        "nonadiabatic_loss_scaling",
        [](double numerator, double trap_omega, double prefactor) {
            return nonadiabatic_loss_scaling(LossKind::TwoFrequency, numerator, trap_omega, prefactor);
        },
        py::arg("numerator"), py::arg("trap_omega"), py::arg("prefactor") = 1.0);
    m.def("nonadiabatic_coupling", &nonadiabatic_coupling, py::arg("config"), py::arg("spin"), py::arg("x"));

    m.def(
        "resonance_offset",
        [](const Species& species, double field_gauss, int twice_m_I) {
            ZeemanConfig z{field_gauss, species, HalfInteger::from_twice(-species.nuclear_spin.twice),
                           HalfInteger::from_twice(species.nuclear_spin.twice)};
            return resonance_offset(z, HalfInteger::from_twice(twice_m_I));
        },
        py::arg("species"), py::arg("field_gauss"), py::arg("twice_m_I"));
    m.def(
        "tensor_coefficient",
        [](int twice_F, int twice_m_F) {
            const Rational r = tensor_coefficient_exact({HalfInteger::from_twice(twice_F), HalfInteger::from_twice(twice_m_F)});
            return py::make_tuple(r.num, r.den);
        },
        py::arg("twice_F"), py::arg("twice_m_F"), "Exact coefficient as (numerator, denominator).");
    m.def(
        "gradient_site_splitting",
        [](const Species& species, double gradient_gauss_per_cm, std::optional<double> site_spacing_m) {
            return gradient_site_splitting(GradientConfig{gradient_gauss_per_cm, site_spacing_m}, species);
        },
        py::arg("species"), py::arg("gradient_gauss_per_cm"), py::arg("site_spacing_m") = py::none());

    py::class_<LossSystem>(m, "LossSystem")
        .def(py::init([](double rabi, double detuning, double loss_rate) {
                 return LossSystem{rabi, detuning, loss_rate};
             }),
             py::arg("rabi"), py::arg("detuning") = 0.0, py::arg("loss_rate") = 0.0)
        .def_readwrite("rabi", &LossSystem::rabi)
        .def_readwrite("detuning", &LossSystem::detuning)
        .def_readwrite("loss_rate", &LossSystem::loss_rate);
    m.def(
        "survival_probability",
        [](const LossSystem& s, double t) {
            const SurvivalResult r = survival_probability(s, t);
            return py::make_tuple(r.survival, r.no_jump_norm_sq);
        },
        py::arg("system"), py::arg("t"), "(sink-model survival, no-jump squared norm)");
    m.def(
        "gamma_eff",
        [](const LossSystem& s) {
            const GammaEff g = gamma_eff(s);
            return py::make_tuple(g.rate, g.perturbative);
        },
        py::arg("system"));

    py::class_<BlockadeModel>(m, "BlockadeModel")
        .def_static("perfect", &BlockadeModel::perfect, py::arg("rabi"))
        .def_static("interaction", &BlockadeModel::with_interaction, py::arg("rabi"), py::arg("interaction"))
        .def_static("lossy", &BlockadeModel::lossy, py::arg("rabi"), py::arg("loss_rate"))
        .def_static("combined", &BlockadeModel::combined, py::arg("rabi"), py::arg("interaction"), py::arg("loss_rate"))
        .def_property_readonly("label", &BlockadeModel::label);
    m.def("transport_colocate", &transport_colocate, py::arg("q1"), py::arg("q2"));
    m.def(
        "gate_truth_table", [](const BlockadeModel& model) { return to_python(to_json(gate_truth_table(model))); },
        py::arg("model"));
    m.def(
        "logical_map", [](const BlockadeModel& model) { return Eigen::Matrix4cd(gate_truth_table(model).logical_map); },
        py::arg("model"));
    m.def(
        "fidelity_scan",
        [](const std::string& family, const std::vector<double>& ratios, double other_ratio, int threads) {
            ScanFamily f;
            if (family == "lossy") {
                f = ScanFamily::Lossy;
            } else if (family == "interaction") {
                f = ScanFamily::Interaction;
            } else {
                throw DomainError("family must be 'lossy' or 'interaction'");
            }
            py::list out;
            for (const ScanPoint& p : fidelity_scan(f, ratios, other_ratio, 1.0, threads)) {
                out.append(py::make_tuple(p.ratio, p.loss_probability, p.process_fidelity));
            }
            return out;
        },
        py::arg("family"), py::arg("ratios"), py::arg("other_ratio") = 0.0, py::arg("threads") = 1,
        "Rows of (ratio, loss_probability, process_fidelity).");
    m.def(
        "collisional_phase",
        [](double onsite_interaction, double hold_time) { return collisional_phase_gate(onsite_interaction, hold_time).phase; },
        py::arg("onsite_interaction"), py::arg("hold_time"));

    m.def(
        "decoherence_budget",
        [](const Species& species, double trap_omega, std::vector<double> noise_frequency_hz, std::vector<double> noise_psd,
           double wavelength_epsilon, double depth_fluctuation, double lattice_depth, double detuning_noise, double rabi,
           double detuning, double p0_admixture, double p0_pair_loss_rate) {
            BudgetInput in;
            in.trap_omega = trap_omega;
            in.noise = {std::move(noise_frequency_hz), std::move(noise_psd)};
            in.wavelength_epsilon = wavelength_epsilon;
            in.depth_fluctuation = depth_fluctuation;
            in.lattice_depth = lattice_depth;
            in.detuning_noise = detuning_noise;
            in.rabi = rabi;
            in.detuning = detuning;
            in.p0_admixture = p0_admixture;
            in.p0_pair_loss_rate = p0_pair_loss_rate;
            return to_python(to_json(decoherence_budget(in, species)));
        },
        py::arg("species"), py::arg("trap_omega"), py::arg("noise_frequency_hz"), py::arg("noise_psd"),
        py::arg("wavelength_epsilon") = 0.0, py::arg("depth_fluctuation") = 0.0, py::arg("lattice_depth") = 0.0,
        py::arg("detuning_noise") = 0.0, py::arg("rabi") = 0.0, py::arg("detuning") = 0.0,
        py::arg("p0_admixture") = 0.0, py::arg("p0_pair_loss_rate") = 0.0);
}
