// Command-line experiment runner: every headline quantity of the library is
// reachable as a subcommand with machine-readable CSV/JSON output.
#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qcalab/eig.hpp"
#include "qcalab/errors.hpp"
#include "qcalab/fits.hpp"
#include "qcalab/highprec.hpp"
#include "qcalab/internal_space.hpp"
#include "qcalab/io.hpp"
#include "qcalab/momentum.hpp"
#include "qcalab/qca1d.hpp"
#include "qcalab/toeplitz.hpp"

using json = nlohmann::ordered_json;
using namespace qcalab;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void emit_record(const std::string& command, const json& params, const json& results,
                 const std::vector<std::string>& outputs, const Stopwatch& sw, bool pass = true) {
    json rec;
    rec["command"] = command;
    rec["parameters"] = params;
    for (auto it = results.begin(); it != results.end(); ++it) rec[it.key()] = it.value();
    rec["outputs"] = outputs;
    rec["wall_time_s"] = sw.seconds();
    rec["pass"] = pass;
    std::cout << rec.dump(2) << "\n";
}

Species parse_species3(const std::string& s) {
    if (s == "fermion") return Species::Fermion;
    if (s == "boson") return Species::Boson;
    if (s == "boson-doubled") return Species::BosonDoubled;
    throw ValidationError("unknown species: " + s);
}

LatticeSpecies parse_species1d(const std::string& s) {
    if (s == "fermion") return LatticeSpecies::Fermion;
    if (s == "boson") return LatticeSpecies::Boson;
    throw ValidationError("unknown lattice species: " + s);
}

long default_digits(long fallback) {
    if (const char* env = std::getenv("QCALAB_DIGITS")) {
        const long v = std::atol(env);
        if (v > 0) return v;
    }
    return fallback;
}

std::vector<double> axis_grid(int n, double dx) {
    std::vector<double> ks;
    ks.reserve(n);
    for (int j = 0; j < n; ++j) ks.push_back((-M_PI + 2.0 * M_PI * double(j + 1) / double(n)) / dx);
    return ks;
}

// distance of the phase multiset from its negation. The multisets {phi} and
// {-phi} agree exactly when every power sum matches, i.e. when sum_j
// sin(m phi_j) = 0 for m = 1..len; this avoids any ±pi branch bookkeeping.
double negation_asymmetry(const std::vector<double>& phases) {
    double worst = 0.0;
    for (std::size_t m = 1; m <= phases.size(); ++m) {
        double im = 0.0;
        for (double p : phases) im += std::sin(double(m) * p);
        worst = std::max(worst, std::abs(im));
    }
    return worst;
}

std::vector<std::tuple<std::string, double, double>> read_state_csv(const std::string& path) {
    const auto rows = parse_csv(read_text_file(path));
    std::vector<std::tuple<std::string, double, double>> recs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0 && !rows[i].empty() && rows[i][0] == "label") continue;  // header
        if (rows[i].size() != 3) throw ValidationError("state file rows need label,re,im");
        recs.emplace_back(rows[i][0], std::stod(rows[i][1]), std::stod(rows[i][2]));
    }
    return recs;
}

std::string state_to_csv(const LatticeState1D& s) {
    std::string out = csv_line({"label", "re", "im"});
    for (const auto& [label, re, im] : export_records(s))
        out += csv_line({label, format_double(re), format_double(im)});
    return out;
}

int run_equalnorm(const std::string& species) {
    Stopwatch sw;
    InternalSpace space;
    switch (parse_species3(species)) {
        case Species::Fermion: space = build_fermion_space(); break;
        case Species::Boson: space = build_boson_space(false); break;
        case Species::BosonDoubled: space = build_boson_space(true); break;
    }
    const EqualNormReport rep = verify_equal_norm(space);

    // companion algebra diagnostics: coin/shift anticommutators (fermion),
    // zero-sector cross products (boson)
    double algebra = 0.0;
    if (space.species == Species::Fermion) {
        for (int a = 0; a < 3; ++a) {
            algebra = std::max(algebra, anticommutator(space.Q, space.DeltaP[a]).frobenius_norm());
            for (int b = 0; b < 3; ++b)
                if (a != b)
                    algebra = std::max(
                        algebra, anticommutator(space.DeltaP[a], space.DeltaP[b]).frobenius_norm());
        }
    } else {
        for (int a = 0; a < 3; ++a)
            algebra = std::max(
                algebra, ((*space.P_zero)[a] * (*space.P_zero)[(a + 1) % 3]).frobenius_norm());
    }

    json res;
    res["c"] = rep.c;
    if (rep.c_prime) res["c_prime"] = *rep.c_prime;
    res["max_violation"] = rep.max_violation;
    res["algebra_max_violation"] = algebra;
    emit_record("equalnorm", {{"species", species}}, res, {}, sw);
    return 0;
}

int run_dispersion(const std::string& species, double theta, int kgrid, double dx,
                   bool dirac_compare, const std::string& out_path) {
    Stopwatch sw;
    const WalkConfig cfg = make_walk_config(parse_species3(species), theta, dx);
    const auto ks = axis_grid(kgrid, dx);

    std::vector<std::string> header = {"kx", "ky", "kz"};
    for (std::size_t i = 0; i < cfg.space.dim; ++i) header.push_back("phi" + std::to_string(i));
    if (dirac_compare) header.push_back("dirac_rel_err");
    std::string csv = csv_line(header);

    double max_unit = 0.0, max_asym = 0.0, max_dirac = 0.0;
    for (double kx : ks)
        for (double ky : ks)
            for (double kz : ks) {
                const MomentumPoint k{kx, ky, kz};
                const ComplexMatrix u = walk_unitary_at_k(cfg, k);
                max_unit = std::max(max_unit, u.unitarity_defect());
                const auto d = dispersion(cfg, k);
                max_asym = std::max(max_asym, negation_asymmetry(d.phases));
                std::vector<std::string> row = {format_double(kx), format_double(ky),
                                                format_double(kz)};
                for (double p : d.phases) row.push_back(format_double(p));
                if (dirac_compare) {
                    const double e = std::sqrt(theta * theta + k.norm() * k.norm() * dx * dx);
                    double rel = 0.0;
                    if (e > 0.0)
                        for (double p : d.phases) rel = std::max(rel, std::abs(std::abs(p) - e) / e);
                    max_dirac = std::max(max_dirac, rel);
                    row.push_back(format_double(rel));
                }
                csv += csv_line(row);
            }
    write_text_file(out_path, csv);

    json res;
    res["max_unitarity_defect"] = max_unit;
    res["max_negation_asymmetry"] = max_asym;
    if (dirac_compare) res["max_dirac_rel_err"] = max_dirac;
    emit_record("dispersion",
                {{"species", species}, {"theta", theta}, {"kgrid", kgrid}, {"dx", dx}},
                res, {out_path}, sw);
    return 0;
}

int run_qca3d_eig(int kgrid, bool doubled, double dx, const std::string& out_path) {
    Stopwatch sw;
    const auto ks = axis_grid(kgrid, dx);
    std::vector<std::string> header = {"kx", "ky", "kz"};
    if (!doubled) {
        header.insert(header.end(), {"phi_minus", "phi0", "phi_plus"});
    } else {
        for (int i = 0; i < 6; ++i) header.push_back("phi" + std::to_string(i));
    }
    std::string csv = csv_line(header);
    double max_defect = 0.0;
    for (double kx : ks)
        for (double ky : ks)
            for (double kz : ks) {
                const MomentumPoint k{kx, ky, kz};
                std::vector<std::string> row = {format_double(kx), format_double(ky),
                                                format_double(kz)};
                if (!doubled) {
                    const QcaEigenphases ph = qca_c_eigenphases(k, dx);
                    auto spec = unitary_phases(eig_unitary(qca_c_matrix(k, dx, false)));
                    std::sort(spec.begin(), spec.end());
                    // phi_minus = -pi labels the same eigenvalue as +pi
                    double lo = ph.phi_minus;
                    if (lo <= -M_PI + 1e-15) lo = M_PI;
                    std::vector<double> closed = {lo, ph.phi0, ph.phi_plus};
                    std::sort(closed.begin(), closed.end());
                    for (int i = 0; i < 3; ++i)
                        max_defect = std::max(max_defect, std::abs(spec[i] - closed[i]));
                    row.insert(row.end(), {format_double(ph.phi_minus), format_double(ph.phi0),
                                           format_double(ph.phi_plus)});
                } else {
                    auto spec = unitary_phases(eig_unitary(qca_c_matrix(k, dx, true)));
                    std::sort(spec.begin(), spec.end());
                    for (double p : spec) row.push_back(format_double(p));
                }
                csv += csv_line(row);
            }
    write_text_file(out_path, csv);
    json res;
    if (!doubled) res["max_closed_form_defect"] = max_defect;
    emit_record("qca3d-eig", {{"kgrid", kgrid}, {"doubled", doubled}, {"dx", dx}}, res,
                {out_path}, sw);
    return 0;
}

int run_evolve(std::size_t n, const std::string& species, double theta, std::size_t bmax,
               std::size_t steps, const std::string& state_in, const std::string& out_path) {
    Stopwatch sw;
    Lattice1DConfig cfg{n, parse_species1d(species), theta, bmax};
    validate_config(cfg);
    LatticeState1D s =
        state_in.empty() ? vacuum_state(cfg) : state_from_records(cfg, read_state_csv(state_in));
    const Evolution1D ev(cfg);
    s = ev.step(s, steps);
    write_text_file(out_path, state_to_csv(s));
    json res;
    res["norm"] = state_norm(s);
    res["dimension"] = s.amplitudes.size();
    emit_record("qca1d evolve",
                {{"N", n},
                 {"species", species},
                 {"theta", theta},
                 {"bmax", bmax},
                 {"steps", steps},
                 {"state_in", state_in}},
                res, {out_path}, sw);
    return 0;
}

int run_tau_check(std::size_t n, const std::string& species, double theta, std::size_t bmax) {
    Stopwatch sw;
    Lattice1DConfig cfg{n, parse_species1d(species), theta, bmax};
    const double defect = time_reversal_defect(cfg);
    json res;
    res["defect"] = defect;
    emit_record("qca1d tau-check",
                {{"N", n}, {"species", species}, {"theta", theta}, {"bmax", bmax}}, res, {}, sw,
                defect <= 1e-12);
    return 0;
}

int run_single_particle(std::size_t n, const std::string& species, double theta, std::size_t bmax,
                        const std::string& out_path) {
    Stopwatch sw;
    Lattice1DConfig cfg{n, parse_species1d(species), theta, bmax};
    if (cfg.species == LatticeSpecies::Boson && cfg.boson_truncation == 0)
        cfg.boson_truncation = 1;
    const ComplexMatrix blk = single_particle_block(cfg);
    write_text_file(out_path, matrix_to_csv(blk));
    json res;
    res["unitarity_defect"] = blk.unitarity_defect();
    emit_record("qca1d single-particle",
                {{"N", n}, {"species", species}, {"theta", theta}, {"bmax", cfg.boson_truncation}},
                res, {out_path}, sw);
    return 0;
}

int run_interact(std::size_t n, double theta, double alpha, std::size_t bmax, std::size_t steps,
                 std::size_t range, const std::string& profile_str,
                 const std::string& fermion_state_in, const std::string& boson_state_in,
                 bool check_translation, const std::string& out_path) {
    Stopwatch sw;
    const Lattice1DConfig cfg_f{n, LatticeSpecies::Fermion, theta, 0};
    const Lattice1DConfig cfg_b{n, LatticeSpecies::Boson, 0.0, bmax};
    validate_config(cfg_f);
    validate_config(cfg_b);

    InteractionCoeffs coeffs;
    for (auto& a : coeffs.alpha) a = alpha;
    coeffs.range = range;
    if (!profile_str.empty()) {
        std::istringstream is(profile_str);
        std::string tok;
        while (std::getline(is, tok, ',')) coeffs.profile.emplace_back(std::stod(tok), 0.0);
    }

    const Evolution1D ef(cfg_f);
    const Evolution1D eb(cfg_b);
    const InteractionUnitary ui(cfg_f, cfg_b, coeffs);
    const std::size_t dim_b = ui.dim_boson();

    // joint initial state: product of the per-lattice snapshots (vacuum each
    // when no file is given)
    const LatticeState1D sf = fermion_state_in.empty()
                                  ? vacuum_state(cfg_f)
                                  : state_from_records(cfg_f, read_state_csv(fermion_state_in));
    const LatticeState1D sb = boson_state_in.empty()
                                  ? vacuum_state(cfg_b)
                                  : state_from_records(cfg_b, read_state_csv(boson_state_in));
    std::vector<cdouble> joint(ui.dim());
    for (std::size_t f = 0; f < sf.amplitudes.size(); ++f)
        for (std::size_t b = 0; b < dim_b; ++b)
            joint[f * dim_b + b] = sf.amplitudes[f] * sb.amplitudes[b];

    std::string csv = csv_line({"step", "norm", "positive_total", "negative_total"});
    auto record_step = [&](std::size_t step) {
        const ModePopulations pops = joint_negative_mode_population(joint, cfg_f, cfg_b);
        double norm = 0.0;
        for (const auto& a : joint) norm += std::norm(a);
        csv += csv_line({std::to_string(step), format_double(std::sqrt(norm)),
                         format_double(pops.total_positive()),
                         format_double(pops.total_negative())});
    };
    record_step(0);
    for (std::size_t t = 1; t <= steps; ++t) {
        ef.apply(joint, dim_b);  // free fermion layer
        eb.apply(joint, 1);      // free boson layer
        ui.apply(joint);         // interaction
        record_step(t);
    }
    write_text_file(out_path, csv);

    json res;
    if (check_translation) {
        const ComplexMatrix w = kron(ef.to_matrix(), eb.to_matrix());
        res["translation_commutator"] = translation_commutator(ui.multiply_dense(w), cfg_f, cfg_b);
    }
    emit_record("qca1d interact",
                {{"N", n},
                 {"theta", theta},
                 {"alpha", alpha},
                 {"bmax", bmax},
                 {"steps", steps},
                 {"range", range},
                 {"profile", profile_str}},
                res, {out_path}, sw);
    return 0;
}

int run_toeplitz_matrix(std::size_t m, std::optional<std::size_t> n_exact,
                        const std::string& out_path) {
    Stopwatch sw;
    ToeplitzSpec spec{m, n_exact};
    const auto d = dbar_matrix(spec);
    write_text_file(out_path, real_matrix_to_csv(d, m + 1));
    json params;
    params["M"] = m;
    if (n_exact) params["N"] = *n_exact;
    emit_record("toeplitz matrix", params, {}, {out_path}, sw);
    return 0;
}

int run_toeplitz_mineig(std::size_t m, long digits) {
    Stopwatch sw;
    if (digits <= 0) digits = default_digits(required_digits(m));
    digits = std::max(digits, required_digits(m));
    const BigMatrix mat = build_dbar_bigreal(m, digits);
    const MinEigResult r = min_eigpair(mat, digits);
    json res;
    res["lambda_min"] = r.lambda_min.to_string();
    res["lambda_min_double"] = r.lambda_min.to_double();
    res["residual"] = r.residual.to_string();
    res["digits_used"] = digits;
    emit_record("toeplitz mineig", {{"M", m}, {"digits", digits}}, res, {}, sw);
    return 0;
}

std::vector<std::size_t> parse_mlist(const std::string& mlist) {
    std::vector<std::size_t> ms;
    std::istringstream is(mlist);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        const auto colon = tok.find(':');
        if (colon != std::string::npos) {
            // a:b:step range
            const auto rest = tok.substr(colon + 1);
            const auto colon2 = rest.find(':');
            const long a = std::stol(tok.substr(0, colon));
            const long b = std::stol(colon2 == std::string::npos ? rest : rest.substr(0, colon2));
            const long st = colon2 == std::string::npos ? 2 : std::stol(rest.substr(colon2 + 1));
            if (st <= 0) throw ValidationError("range step must be positive");
            for (long v = a; v <= b; v += st) ms.push_back(static_cast<std::size_t>(v));
        } else if (!tok.empty()) {
            ms.push_back(static_cast<std::size_t>(std::stol(tok)));
        }
    }
    if (ms.empty()) throw ValidationError("empty M list");
    return ms;
}

int run_toeplitz_series(const std::string& mlist, const std::string& policy,
                        const std::string& out_path) {
    Stopwatch sw;
    long floor_digits = BigReal::kMinDigits;
    if (policy == "auto") {
        floor_digits = default_digits(BigReal::kMinDigits);
    } else {
        floor_digits = std::stol(policy);
    }
    const auto ms = parse_mlist(mlist);
    const auto series = min_eig_series(ms, floor_digits);
    std::string csv = csv_line({"M", "lambda_min", "digits_used", "residual"});
    for (const auto& p : series)
        csv += csv_line({std::to_string(p.M), p.lambda_min.to_string(),
                         std::to_string(p.digits_used), p.residual.to_string()});
    write_text_file(out_path, csv);
    emit_record("toeplitz series", {{"Mlist", mlist}, {"policy", policy}},
                {{"points", series.size()}}, {out_path}, sw);
    return 0;
}

int run_toeplitz_alpha_fit(const std::string& series_path, std::size_t min_m) {
    Stopwatch sw;
    const auto rows = parse_csv(read_text_file(series_path));
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == 0 && !rows[i].empty() && rows[i][0] == "M") continue;
        if (rows[i].size() < 2) continue;
        const double m = std::stod(rows[i][0]);
        // the eigenvalues can sit far below double range; parse at precision
        const double lam = BigReal::from_string(rows[i][1], 40).to_double();
        if (m + 1e-9 >= double(min_m)) pts.emplace_back(m, lam);
    }
    const FitResult fit = fit_exp_decay(pts);
    json res;
    res["alpha"] = fit.parameters[0];
    res["log_prefactor"] = fit.parameters[1];
    res["r_squared"] = fit.r_squared;
    res["residual_max"] = fit.residual_max;
    res["points_used"] = pts.size();
    emit_record("toeplitz alpha-fit", {{"series", series_path}, {"min_M", min_m}}, res, {}, sw);
    return 0;
}

int run_toeplitz_eigvec(std::size_t m, long digits, const std::string& out_path) {
    Stopwatch sw;
    if (digits <= 0) digits = default_digits(required_digits(m));
    digits = std::max(digits, required_digits(m));
    const BigMatrix mat = build_dbar_bigreal(m, digits);
    const MinEigResult r = min_eigpair(mat, digits);
    std::string csv = csv_line({"j", "v"});
    for (std::size_t j = 0; j < r.eigenvector.size(); ++j)
        csv += csv_line({std::to_string(j), r.eigenvector[j].to_string()});
    write_text_file(out_path, csv);
    json res;
    res["lambda_min"] = r.lambda_min.to_string();
    res["digits_used"] = digits;
    emit_record("toeplitz eigvec", {{"M", m}, {"digits", digits}}, res, {out_path}, sw);
    return 0;
}

int run_ftilde(std::size_t terms, int kgrid, const std::string& out_path) {
    Stopwatch sw;
    std::string csv = csv_line({"k", "f_tilde"});
    double min_val = 1e300, max_val = -1e300;
    for (int i = 0; i < kgrid; ++i) {
        const double k = -M_PI + 2.0 * M_PI * double(i) / double(kgrid - 1);
        const double v = f_tilde(k, terms);
        min_val = std::min(min_val, v);
        max_val = std::max(max_val, v);
        csv += csv_line({format_double(k), format_double(v)});
    }
    write_text_file(out_path, csv);
    json res;
    res["min"] = min_val;
    res["max"] = max_val;
    emit_record("ftilde", {{"terms", terms}, {"kgrid", kgrid}}, res, {out_path}, sw);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for lattice-walk field theory models"};
    app.require_subcommand(1);

    int exit_code = 0;
    auto guard = [&exit_code](auto&& fn) {
        try {
            exit_code = fn();
        } catch (const ValidationError& e) {
            std::cerr << "validation error: " << e.what() << "\n";
            exit_code = 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            exit_code = 1;
        }
    };

    // equalnorm
    std::string en_species = "fermion";
    auto* en = app.add_subcommand("equalnorm", "measure the equal-norm constants of a coin space");
    en->add_option("--species", en_species, "fermion | boson | boson-doubled");
    en->callback([&] { guard([&] { return run_equalnorm(en_species); }); });

    // dispersion
    std::string di_species = "fermion";
    double di_theta = 0.0, di_dx = 1.0;
    int di_kgrid = 8;
    bool di_dirac = false;
    std::string di_out = "dispersion.csv";
    auto* di = app.add_subcommand("dispersion", "eigenphases of the momentum blocks on a k-grid");
    di->add_option("--species", di_species, "fermion | boson | boson-doubled");
    di->add_option("--theta", di_theta, "mass angle (fermion only)");
    di->add_option("--kgrid", di_kgrid, "grid points per axis")->check(CLI::PositiveNumber);
    di->add_option("--dx", di_dx, "lattice spacing")->check(CLI::PositiveNumber);
    di->add_flag("--dirac-compare", di_dirac, "emit relative error against sqrt(theta^2+|k dx|^2)");
    di->add_option("--out", di_out, "output CSV path");
    di->callback([&] {
        guard([&] { return run_dispersion(di_species, di_theta, di_kgrid, di_dx, di_dirac, di_out); });
    });

    // qca3d-eig
    int qe_kgrid = 8;
    bool qe_doubled = false;
    double qe_dx = 1.0;
    std::string qe_out = "qca3d_eig.csv";
    auto* qe = app.add_subcommand("qca3d-eig", "eigenphases of the three-axis automaton product");
    qe->add_option("--kgrid", qe_kgrid, "grid points per axis")->check(CLI::PositiveNumber);
    qe->add_flag("--doubled", qe_doubled, "use the six-dimensional doubled space");
    qe->add_option("--dx", qe_dx, "lattice spacing")->check(CLI::PositiveNumber);
    qe->add_option("--out", qe_out, "output CSV path");
    qe->callback([&] { guard([&] { return run_qca3d_eig(qe_kgrid, qe_doubled, qe_dx, qe_out); }); });

    // qca1d
    auto* q1 = app.add_subcommand("qca1d", "one-dimensional lattice automaton experiments");
    q1->require_subcommand(1);

    std::size_t ev_n = 4, ev_bmax = 1, ev_steps = 1;
    double ev_theta = 0.0;
    std::string ev_species = "fermion", ev_state_in, ev_out = "qca1d_state.csv";
    auto* ev = q1->add_subcommand("evolve", "run the free automaton on a state snapshot");
    ev->add_option("--N", ev_n, "number of sites (even)")->required();
    ev->add_option("--theta", ev_theta, "mass angle (fermion only)");
    ev->add_option("--steps", ev_steps, "number of steps");
    ev->add_option("--species", ev_species, "fermion | boson");
    ev->add_option("--bmax", ev_bmax, "total boson number cutoff");
    ev->add_option("--state-in", ev_state_in, "initial state CSV (label,re,im); vacuum if absent");
    ev->add_option("--out", ev_out, "output CSV path");
    ev->callback([&] {
        guard([&] {
            return run_evolve(ev_n, ev_species, ev_theta, ev_bmax, ev_steps, ev_state_in, ev_out);
        });
    });

    std::size_t tc_n = 4, tc_bmax = 2;
    double tc_theta = 0.0;
    std::string tc_species = "fermion";
    auto* tc = q1->add_subcommand("tau-check", "verify the time-reversal conjugation identity");
    tc->add_option("--N", tc_n, "number of sites (even)")->required();
    tc->add_option("--species", tc_species, "fermion | boson");
    tc->add_option("--theta", tc_theta, "mass angle (fermion only)");
    tc->add_option("--bmax", tc_bmax, "total boson number cutoff");
    tc->callback([&] {
        guard([&] { return run_tau_check(tc_n, tc_species, tc_theta, tc_bmax); });
    });

    std::size_t sp_n = 8, sp_bmax = 1;
    double sp_theta = 0.0;
    std::string sp_species = "fermion", sp_out = "qca1d_single_particle.csv";
    auto* sp = q1->add_subcommand("single-particle", "one-excitation block of the free automaton");
    sp->add_option("--N", sp_n, "number of sites (even)")->required();
    sp->add_option("--species", sp_species, "fermion | boson");
    sp->add_option("--theta", sp_theta, "mass angle (fermion only)");
    sp->add_option("--bmax", sp_bmax, "total boson number cutoff");
    sp->add_option("--out", sp_out, "output CSV path");
    sp->callback([&] {
        guard([&] { return run_single_particle(sp_n, sp_species, sp_theta, sp_bmax, sp_out); });
    });

    std::size_t in_n = 4, in_bmax = 1, in_steps = 4, in_range = 0;
    double in_theta = 0.0, in_alpha = 0.05;
    std::string in_profile, in_fstate, in_bstate, in_out = "qca1d_interact.csv";
    bool in_check_t = false;
    auto* in = q1->add_subcommand("interact", "coupled evolution with mode-population tracking");
    in->add_option("--N", in_n, "number of sites (even)")->required();
    in->add_option("--theta", in_theta, "fermion mass angle");
    in->add_option("--alpha", in_alpha, "uniform coupling for all internal-state slots");
    in->add_option("--bmax", in_bmax, "total boson number cutoff");
    in->add_option("--steps", in_steps, "number of full steps");
    in->add_option("--range", in_range, "coupling range M (even)");
    in->add_option("--profile", in_profile, "comma list of M+1 offset weights");
    in->add_option("--fermion-state-in", in_fstate, "fermion snapshot CSV; vacuum if absent");
    in->add_option("--boson-state-in", in_bstate, "boson snapshot CSV; vacuum if absent");
    in->add_flag("--check-translation", in_check_t, "also report ||[U, T]||_F");
    in->add_option("--out", in_out, "output CSV path");
    in->callback([&] {
        guard([&] {
            return run_interact(in_n, in_theta, in_alpha, in_bmax, in_steps, in_range, in_profile,
                                in_fstate, in_bstate, in_check_t, in_out);
        });
    });

    // toeplitz
    auto* tp = app.add_subcommand("toeplitz", "negative-energy coupling matrix family");
    tp->require_subcommand(1);

    std::size_t tm_m = 4;
    long long tm_n = -1;
    std::string tm_out = "toeplitz_matrix.csv";
    auto* tm = tp->add_subcommand("matrix", "emit the coupling matrix as CSV");
    tm->add_option("--M", tm_m, "range parameter (even)")->required();
    tm->add_option("--N", tm_n, "exact lattice size; large-N limit if absent");
    tm->add_option("--out", tm_out, "output CSV path");
    tm->callback([&] {
        guard([&] {
            std::optional<std::size_t> n_exact;
            if (tm_n > 0) n_exact = static_cast<std::size_t>(tm_n);
            return run_toeplitz_matrix(tm_m, n_exact, tm_out);
        });
    });

    std::size_t me_m = 20;
    long me_digits = 0;
    auto* me = tp->add_subcommand("mineig", "smallest eigenvalue at working precision");
    me->add_option("--M", me_m, "range parameter (even)")->required();
    me->add_option("--digits", me_digits, "decimal digits (policy default if absent)");
    me->callback([&] { guard([&] { return run_toeplitz_mineig(me_m, me_digits); }); });

    std::string se_mlist = "20:60:4", se_policy = "auto", se_out = "toeplitz_series.csv";
    auto* se = tp->add_subcommand("series", "smallest-eigenvalue series over a range list");
    se->add_option("--Mlist", se_mlist, "comma list and/or a:b:step ranges");
    se->add_option("--policy", se_policy, "auto or a digits floor");
    se->add_option("--out", se_out, "output CSV path");
    se->callback([&] { guard([&] { return run_toeplitz_series(se_mlist, se_policy, se_out); }); });

    std::string af_series = "toeplitz_series.csv";
    std::size_t af_min_m = 20;
    auto* af = tp->add_subcommand("alpha-fit", "decay-rate fit over a computed series");
    af->add_option("--series", af_series, "series CSV path");
    af->add_option("--min-M", af_min_m, "smallest range included in the fit window");
    af->callback([&] { guard([&] { return run_toeplitz_alpha_fit(af_series, af_min_m); }); });

    std::size_t eg_m = 60;
    long eg_digits = 0;
    std::string eg_out = "toeplitz_eigvec.csv";
    auto* eg = tp->add_subcommand("eigvec", "eigenvector of the smallest eigenvalue");
    eg->add_option("--M", eg_m, "range parameter (even)")->required();
    eg->add_option("--digits", eg_digits, "decimal digits (policy default if absent)");
    eg->add_option("--out", eg_out, "output CSV path");
    eg->callback([&] { guard([&] { return run_toeplitz_eigvec(eg_m, eg_digits, eg_out); }); });

    // ftilde
    std::size_t ft_terms = 100001;
    int ft_kgrid = 401;
    std::string ft_out = "ftilde.csv";
    auto* ft = app.add_subcommand("ftilde", "partial sums of the symbol transform");
    ft->add_option("--terms", ft_terms, "series truncation")->check(CLI::PositiveNumber);
    ft->add_option("--kgrid", ft_kgrid, "samples over [-pi, pi]")->check(CLI::Range(2, 100000000));
    ft->add_option("--out", ft_out, "output CSV path");
    ft->callback([&] { guard([&] { return run_ftilde(ft_terms, ft_kgrid, ft_out); }); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}
