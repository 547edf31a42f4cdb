#include "cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include <toriheights/conechar.hpp>
#include <toriheights/counting.hpp>
#include <toriheights/enumerate.hpp>
#include <toriheights/errors.hpp>
#include <toriheights/heightzeta.hpp>
#include <toriheights/sr_ring.hpp>

namespace toriheights {

namespace {

using json = nlohmann::ordered_json;

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.dump());
    if (j.is_string()) return Int(j.get<std::string>());
    throw DomainError("ParseError", "expected an integer, got " + j.dump());
}

json rat_to_json(const Rat& r) {
    return json{{"n", r.get_num().get_str()}, {"d", r.get_den().get_str()}};
}

json vec_to_json(const IntVec& v) {
    json a = json::array();
    for (const Int& x : v) a.push_back(x.get_str());
    return a;
}

IntMatrix matrix_from_json(const json& j, int rank) {
    IntMatrix m(rank, rank);
    if (j.is_array() && !j.empty() && j[0].is_array()) {
        if (static_cast<int>(j.size()) != rank)
            throw DomainError("ParseError", "galois generator has wrong row count");
        for (int i = 0; i < rank; ++i) {
            if (static_cast<int>(j[i].size()) != rank)
                throw DomainError("ParseError", "galois generator row has wrong length");
            for (int k = 0; k < rank; ++k) m.at(i, k) = int_from_json(j[i][k]);
        }
        return m;
    }
    if (j.is_array() && static_cast<int>(j.size()) == rank * rank) {
        for (int i = 0; i < rank; ++i)
            for (int k = 0; k < rank; ++k) m.at(i, k) = int_from_json(j[i * rank + k]);
        return m;
    }
    throw DomainError("ParseError", "galois generator must be a rank x rank matrix");
}

json matrix_to_json(const IntMatrix& m) {
    json rows = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (long k = 0; k < m.cols(); ++k) row.push_back(m.at(i, k).get_str());
        rows.push_back(row);
    }
    return rows;
}

json fan_file_json(const Fan& fan, const std::vector<IntMatrix>& generators) {
    json out;
    out["lattice_rank"] = fan.rank();
    out["rays"] = json::array();
    for (const IntVec& r : fan.rays()) out["rays"].push_back(vec_to_json(r));
    out["max_cones"] = json::array();
    for (const Cone& c : fan.maximal_cones()) {
        json cone;
        cone["rays"] = c.ray_indices;
        out["max_cones"].push_back(cone);
    }
    if (!generators.empty()) {
        json gens = json::array();
        for (const IntMatrix& g : generators) gens.push_back(matrix_to_json(g));
        out["galois"] = json{{"generators", gens}};
    }
    return out;
}

Rat rat_from_string(const std::string& text) {
    try {
        Rat r(text);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw DomainError("ParseError", "bad rational: " + text);
    }
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

RatVec rat_list(const std::string& text) {
    RatVec out;
    for (const std::string& p : split_list(text)) out.push_back(rat_from_string(p));
    return out;
}

struct Invocation {
    std::string fan_path;
    std::string phi_text;
    std::string s_text;
    std::string family_text;
    std::string bound_text;
    long q = 0;
    int element = -1;
    long prime_bound = 1000;
    bool json_out = false;
};

LoadedFan load_fan(const Invocation& inv) {
    if (inv.fan_path.empty()) throw DomainError("ParseError", "--fan is required");
    return load_fan_file(inv.fan_path);
}

// Frobenius element for single-place subcommands: explicit --element index,
// otherwise the first declared generator (the arithmetic form the fan file
// describes), otherwise the identity.
IntMatrix select_element(const LoadedFan& lf, const Invocation& inv) {
    if (inv.element >= 0) {
        if (static_cast<size_t>(inv.element) >= lf.action.size())
            throw DomainError("InvalidInput", "--element index out of range");
        return lf.action.elements[static_cast<size_t>(inv.element)];
    }
    if (!lf.generators.empty()) return lf.generators[0];
    return IntMatrix::identity(lf.fan.rank());
}

// --phi values come per ray or per action orbit; expand the latter.
PLFunction phi_function(const LoadedFan& lf, const std::string& text) {
    RatVec vals = rat_list(text);
    const size_t n = lf.fan.rays().size();
    if (vals.size() == n) return PLFunction{vals};
    OrbitPartition orbits = ray_orbits(lf.action);
    if (vals.size() == orbits.size()) {
        RatVec per_ray(n);
        for (size_t i = 0; i < n; ++i)
            per_ray[i] = vals[static_cast<size_t>(orbits.orbit_of[i])];
        return PLFunction{per_ray};
    }
    throw DomainError("InvalidInput", "--phi needs one value per ray or per orbit");
}

std::vector<double> bound_list(const std::string& text) {
    if (text.empty()) throw DomainError("ParseError", "--bound-list is required");
    std::vector<double> out;
    for (const std::string& p : split_list(text)) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(p, &pos));
            if (pos != p.size()) throw std::invalid_argument(p);
        } catch (const std::exception&) {
            throw DomainError("ParseError", "bad bound: " + p);
        }
    }
    return out;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

int cmd_validate(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    if (inv.json_out) {
        json j;
        j["valid"] = true;
        j["lattice_rank"] = lf.fan.rank();
        j["rays"] = lf.fan.rays().size();
        j["maximal_cones"] = lf.fan.maximal_cones().size();
        j["group_order"] = lf.action.size();
        j["fan"] = fan_file_json(lf.fan, lf.generators);
        emit(out, j);
    } else {
        out << "valid\n";
        out << "lattice_rank: " << lf.fan.rank() << "\n";
        out << "rays: " << lf.fan.rays().size() << "\n";
        out << "maximal_cones: " << lf.fan.maximal_cones().size() << "\n";
        out << "group_order: " << lf.action.size() << "\n";
    }
    return 0;
}

int cmd_orbits(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    OrbitPartition orbits = ray_orbits(lf.action);
    bool aniso = is_anisotropic(lf.action);
    if (inv.json_out) {
        json j;
        j["group_order"] = lf.action.size();
        j["anisotropic"] = aniso;
        j["orbits"] = orbits.orbits;
        emit(out, j);
    } else {
        out << "group_order: " << lf.action.size() << "\n";
        out << "anisotropic: " << (aniso ? "yes" : "no") << "\n";
        for (size_t k = 0; k < orbits.size(); ++k) {
            out << "orbit " << k << ":";
            for (int i : orbits.orbits[k]) out << " " << i;
            out << "\n";
        }
    }
    return 0;
}

int cmd_picard(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    PicardLattice pic = picard_lattice(lf.fan);
    // invariant class rank, valid whether or not the torus is anisotropic
    std::vector<IntMatrix> induced;
    for (const std::vector<int>& perm : lf.action.ray_permutations)
        induced.push_back(induced_pic_action(pic, perm));
    int rank_k = static_cast<int>(fixed_sublattice(induced, pic.rank).size());
    std::optional<BetaH> bh;
    try {
        bh = beta_and_h(lf.fan, lf.action);
    } catch (const DomainError& e) {
        if (std::string(e.name()) != "NonCyclicGroup") throw;
    }
    if (inv.json_out) {
        json j;
        j["picard_rank_split"] = pic.rank;
        json tor = json::array();
        for (const Int& t : pic.torsion_part.torsion) tor.push_back(t.get_str());
        j["torsion"] = tor;
        j["picard_rank_invariant"] = rank_k;
        if (bh) {
            j["h"] = bh->h.get_str();
            j["beta"] = bh->beta.get_str();
        } else {
            j["h"] = nullptr;
            j["beta"] = nullptr;
        }
        emit(out, j);
    } else {
        out << "picard_rank_split: " << pic.rank << "\n";
        out << "torsion:";
        if (pic.torsion_part.torsion.empty()) out << " none";
        for (const Int& t : pic.torsion_part.torsion) out << " " << t;
        out << "\n";
        out << "picard_rank_invariant: " << rank_k << "\n";
        if (bh) {
            out << "h: " << bh->h << "\n";
            out << "beta: " << bh->beta << "\n";
        } else {
            out << "h: n/a (group not cyclic)\n";
            out << "beta: n/a (group not cyclic)\n";
        }
    }
    return 0;
}

int cmd_count(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    if (inv.q < 2) throw DomainError("InvalidInput", "--q must be at least 2");
    Int n = count_toric(lf.fan, FrobeniusDatum{select_element(lf, inv), Int(inv.q)});
    if (inv.json_out)
        emit(out, json{{"q", inv.q}, {"count", n.get_str()}});
    else
        out << n << "\n";
    return 0;
}

int cmd_qpoly(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    IntMatrix g = select_element(lf, inv);
    OrbitPartition cycles = orbits_of_permutation(ray_permutation_of(lf.fan, g));
    MultigradedPolynomial q = q_polynomial(lf.fan, g, cycles);
    if (inv.json_out) {
        json j;
        j["orbit_sizes"] = q.orbit_sizes;
        j["terms"] = json::array();
        for (const auto& [profile, coeff] : q.terms)
            j["terms"].push_back(json{{"exponents", profile}, {"coefficient", coeff.get_str()}});
        emit(out, j);
    } else {
        out << "Q = " << q.str() << "\n";
        out << "orbit_sizes:";
        for (long s : q.orbit_sizes) out << " " << s;
        out << "\n";
    }
    return 0;
}

int cmd_chowpoly(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    std::vector<Int> coeffs = chow_trace_polynomial(lf.fan, select_element(lf, inv));
    if (inv.json_out) {
        json c = json::array();
        for (const Int& x : coeffs) c.push_back(x.get_str());
        emit(out, json{{"coefficients", c}});
    } else {
        out << univariate_str(coeffs) << "\n";
    }
    return 0;
}

int cmd_euler(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    if (inv.q < 2) throw DomainError("InvalidInput", "--q must be at least 2");
    IntMatrix g = select_element(lf, inv);
    if (!inv.s_text.empty()) {
        RatVec s = rat_list(inv.s_text);
        if (s.size() != 1)
            throw DomainError("InvalidInput", "euler --s takes a single rational");
        double value = local_factor_diagonal(lf.fan, g, Int(inv.q), s[0].get_d());
        if (inv.json_out)
            emit(out, json{{"q", inv.q}, {"value", value}});
        else
            out << std::setprecision(15) << value << "\n";
        return 0;
    }
    if (inv.phi_text.empty())
        throw DomainError("ParseError", "euler needs --phi (or --s for the diagonal factor)");
    PLFunction phi = phi_function(lf, inv.phi_text);
    std::complex<double> value = local_euler_factor(lf.fan, g, Int(inv.q), phi, {});
    if (inv.json_out)
        emit(out, json{{"q", inv.q}, {"value", value.real()}});
    else
        out << std::setprecision(15) << value.real() << "\n";
    return 0;
}

int cmd_charfn(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    InvariantEffectiveCone iec = invariant_effective_cone(lf.fan, lf.action);
    SimplicialTermSum x = char_function(iec.cone);
    if (!inv.s_text.empty()) {
        RatVec u = rat_list(inv.s_text);
        Rat value = eval_char(x, u);
        if (inv.json_out)
            emit(out, json{{"value", rat_to_json(value)}});
        else
            out << rat_to_string(value) << "\n";
        return 0;
    }
    if (inv.json_out) {
        json j;
        j["ambient_rank"] = iec.cone.ambient_rank;
        j["generators"] = json::array();
        for (const IntVec& gvec : iec.cone.generators) j["generators"].push_back(vec_to_json(gvec));
        j["facets"] = json::array();
        for (const IntVec& f : iec.cone.facets) j["facets"].push_back(vec_to_json(f));
        j["anticanonical"] = vec_to_json(iec.anticanonical);
        j["terms"] = json::array();
        for (const SimplicialTerm& t : x.terms) {
            json forms = json::array();
            for (const IntVec& f : t.forms) forms.push_back(vec_to_json(f));
            j["terms"].push_back(json{{"weight", rat_to_json(t.weight)}, {"forms", forms}});
        }
        emit(out, j);
    } else {
        auto vec_str = [](const IntVec& v) {
            std::ostringstream os;
            os << "(";
            for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
            os << ")";
            return os.str();
        };
        out << "ambient_rank: " << iec.cone.ambient_rank << "\n";
        out << "generators:";
        for (const IntVec& gvec : iec.cone.generators) out << " " << vec_str(gvec);
        out << "\n";
        out << "anticanonical: " << vec_str(iec.anticanonical) << "\n";
        out << "terms: " << x.terms.size() << "\n";
        for (const SimplicialTerm& t : x.terms) {
            out << "weight " << rat_to_string(t.weight) << ": forms";
            for (const IntVec& f : t.forms) out << " " << vec_str(f);
            out << "\n";
        }
    }
    return 0;
}

int cmd_alpha(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    Rat a = alpha(lf.fan, lf.action);
    if (inv.json_out)
        emit(out, json{{"alpha", rat_to_json(a)}});
    else
        out << rat_to_string(a) << "\n";
    return 0;
}

int cmd_abl(const Invocation& inv, std::ostream& out) {
    LoadedFan lf = load_fan(inv);
    PLFunction ell = inv.phi_text.empty()
                         ? PLFunction::anticanonical(lf.fan.rays().size())
                         : phi_function(lf, inv.phi_text);
    ABInvariants ab = a_b_invariants(lf.fan, lf.action, ell);
    if (inv.json_out)
        emit(out, json{{"a", rat_to_json(ab.a)}, {"b", ab.b}});
    else
        out << "a: " << rat_to_string(ab.a) << "\n"
            << "b: " << ab.b << "\n";
    return 0;
}

int cmd_enumerate(const Invocation& inv, std::ostream& out) {
    PointFamily family = PointFamily::parse(inv.family_text);
    CountSeries series = enumerate_counts(family, bound_list(inv.bound_text));
    if (inv.json_out) {
        json j;
        j["family"] = family.name;
        j["bounds"] = series.bounds;
        j["counts"] = series.counts;
        emit(out, j);
    } else {
        out << "bound,count\n";
        for (size_t i = 0; i < series.bounds.size(); ++i) {
            out << series.bounds[i] << "," << series.counts[i] << "\n";
        }
    }
    return 0;
}

int cmd_fit(const Invocation& inv, std::ostream& out) {
    PointFamily family = PointFamily::parse(inv.family_text);
    CountSeries series = enumerate_counts(family, bound_list(inv.bound_text));
    FitResult fit = fit_asymptotic(series);
    std::optional<ABInvariants> predicted = predicted_invariants(family);
    if (inv.json_out) {
        json j;
        j["family"] = family.name;
        j["a_hat"] = fit.a_hat;
        j["b_hat"] = fit.b_hat;
        j["c_hat"] = fit.c_hat;
        j["residual"] = fit.residual;
        if (predicted) {
            j["predicted_a"] = rat_to_json(predicted->a);
            j["predicted_b"] = predicted->b;
        }
        emit(out, j);
    } else {
        out << std::setprecision(6);
        out << "a_hat: " << fit.a_hat << "\n";
        out << "b_hat: " << fit.b_hat << "\n";
        out << "c_hat: " << fit.c_hat << "\n";
        out << "residual: " << fit.residual << "\n";
        if (predicted) {
            out << "predicted_a: " << rat_to_string(predicted->a) << "\n";
            out << "predicted_b: " << predicted->b << "\n";
        }
    }
    return 0;
}

}  // namespace

LoadedFan load_fan_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("ParseError", "cannot open fan file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const std::exception& e) {
        throw DomainError("ParseError", std::string("bad JSON: ") + e.what());
    }
    if (!doc.contains("lattice_rank") || !doc.contains("rays") || !doc.contains("max_cones"))
        throw DomainError("ParseError", "fan file needs lattice_rank, rays, max_cones");

    int rank = 0;
    std::vector<IntVec> rays;
    std::vector<std::vector<int>> cones;
    try {
        rank = doc["lattice_rank"].get<int>();
        for (const json& r : doc["rays"]) {
            IntVec ray;
            for (const json& c : r) ray.push_back(int_from_json(c));
            rays.push_back(ray);
        }
        for (const json& c : doc["max_cones"]) {
            const json& idx = c.is_object() ? c.at("rays") : c;
            cones.push_back(idx.get<std::vector<int>>());
        }
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception& e) {
        throw DomainError("ParseError", std::string("bad fan file: ") + e.what());
    }

    LoadedFan lf(build_and_validate(rank, rays, cones));
    if (doc.contains("galois")) {
        try {
            for (const json& g : doc["galois"].at("generators"))
                lf.generators.push_back(matrix_from_json(g, rank));
        } catch (const DomainError&) {
            throw;
        } catch (const std::exception& e) {
            throw DomainError("ParseError", std::string("bad galois block: ") + e.what());
        }
    }
    lf.action = close_and_verify(lf.fan, lf.generators);
    return lf;
}

std::string fan_file_string(const Fan& fan, const std::vector<IntMatrix>& generators) {
    return fan_file_json(fan, generators).dump(2);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"invariants of equivariant torus compactifications"};
    app.require_subcommand(1);

    Invocation inv;
    auto add_fan_opts = [&](CLI::App* sub) {
        sub->add_option("--fan", inv.fan_path, "fan description JSON file")->required();
        sub->add_option("--element", inv.element, "group element index (default: first generator)");
        sub->add_flag("--json", inv.json_out, "machine-readable output");
    };

    CLI::App* validate = app.add_subcommand("validate", "check a fan file");
    add_fan_opts(validate);
    CLI::App* orbits = app.add_subcommand("orbits", "ray orbits of the galois action");
    add_fan_opts(orbits);
    CLI::App* picard = app.add_subcommand("picard", "divisor class lattice invariants");
    add_fan_opts(picard);

    CLI::App* count = app.add_subcommand("count", "points over a finite field");
    add_fan_opts(count);
    count->add_option("--q", inv.q, "finite field size")->required();

    CLI::App* qpoly = app.add_subcommand("qpoly", "numerator trace polynomial");
    add_fan_opts(qpoly);
    CLI::App* chowpoly = app.add_subcommand("chowpoly", "graded trace of the class module");
    add_fan_opts(chowpoly);

    CLI::App* euler = app.add_subcommand("euler", "local height zeta factor");
    add_fan_opts(euler);
    euler->add_option("--q", inv.q, "residue field size")->required();
    euler->add_option("--phi", inv.phi_text, "height exponents, per ray or per orbit");
    euler->add_option("--s", inv.s_text, "diagonal evaluation point");

    CLI::App* charfn = app.add_subcommand("charfn", "characteristic function of the effective cone");
    add_fan_opts(charfn);
    charfn->add_option("--s", inv.s_text, "evaluation point in invariant class coordinates");

    CLI::App* alpha_cmd = app.add_subcommand("alpha", "effective cone volume constant");
    add_fan_opts(alpha_cmd);

    CLI::App* abl = app.add_subcommand("abl", "geometric a and b invariants of a class");
    add_fan_opts(abl);
    abl->add_option("--phi", inv.phi_text, "class values, per ray or per orbit (default: anticanonical)");

    CLI::App* enumerate = app.add_subcommand("enumerate", "count rational points by height");
    enumerate->add_option("--family", inv.family_text, "point family, e.g. projective(2)")->required();
    enumerate->add_option("--bound-list", inv.bound_text, "height bounds B1,B2,...")->required();
    enumerate->add_flag("--json", inv.json_out, "machine-readable output");

    CLI::App* fit = app.add_subcommand("fit", "fit c B^a (log B)^(b-1) to enumerated counts");
    fit->add_option("--family", inv.family_text, "point family, e.g. conic(-4)")->required();
    fit->add_option("--bound-list", inv.bound_text, "height bounds B1,B2,...")->required();
    fit->add_flag("--json", inv.json_out, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (app.got_subcommand(validate)) return cmd_validate(inv, out);
        if (app.got_subcommand(orbits)) return cmd_orbits(inv, out);
        if (app.got_subcommand(picard)) return cmd_picard(inv, out);
        if (app.got_subcommand(count)) return cmd_count(inv, out);
        if (app.got_subcommand(qpoly)) return cmd_qpoly(inv, out);
        if (app.got_subcommand(chowpoly)) return cmd_chowpoly(inv, out);
        if (app.got_subcommand(euler)) return cmd_euler(inv, out);
        if (app.got_subcommand(charfn)) return cmd_charfn(inv, out);
        if (app.got_subcommand(alpha_cmd)) return cmd_alpha(inv, out);
        if (app.got_subcommand(abl)) return cmd_abl(inv, out);
        if (app.got_subcommand(enumerate)) return cmd_enumerate(inv, out);
        if (app.got_subcommand(fit)) return cmd_fit(inv, out);
    } catch (const DomainError& e) {
        if (std::string(e.name()) == "ParseError") {
            err << e.what() << "\n";
            return 2;
        }
        out << e.name() << "\n";
        err << e.what() << "\n";
        return 1;
    }
    err << "no subcommand dispatched\n";
    return 2;
}

}  // namespace toriheights
