#include "photonq/setup_file.hpp"

#include "json.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace photonq {

using json = nlohmann::json;

namespace {

struct Parser {
    std::string origin;
    std::set<std::string> referenced;  // parameter names used by expressions

    [[noreturn]] void fail(const std::string& msg) const { throw SchemaError(origin + ": " + msg); }

    void check_keys(const json& j, const std::set<std::string>& allowed,
                    const std::string& context) const {
        for (const auto& [key, value] : j.items())
            if (!allowed.count(key)) fail("unknown key '" + key + "' in " + context);
    }

    const json& require(const json& j, const std::string& key, const std::string& context) const {
        auto it = j.find(key);
        if (it == j.end()) fail("missing key '" + key + "' in " + context);
        return *it;
    }

    double number(const json& j, const std::string& context) const {
        if (!j.is_number()) fail(context + " must be a number");
        return j.get<double>();
    }

    int integer(const json& j, const std::string& context) const {
        if (!j.is_number_integer()) fail(context + " must be an integer");
        return j.get<int>();
    }

    std::string text(const json& j, const std::string& context) const {
        if (!j.is_string()) fail(context + " must be a string");
        return j.get<std::string>();
    }

    ParamExpr expr(const json& j, const std::string& context) {
        if (j.is_number()) return ParamExpr::constant(j.get<double>());
        if (j.is_string()) {
            std::string name = j.get<std::string>();
            if (name.empty()) fail(context + ": parameter name must be nonempty");
            referenced.insert(name);
            return ParamExpr::symbol(name);
        }
        if (j.is_object()) {
            check_keys(j, {"param", "coeff", "offset"}, context);
            std::string name = text(require(j, "param", context), context + ".param");
            double coeff = j.contains("coeff") ? number(j["coeff"], context + ".coeff") : 1.0;
            double offset = j.contains("offset") ? number(j["offset"], context + ".offset") : 0.0;
            referenced.insert(name);
            return ParamExpr::symbol(name, coeff, offset);
        }
        fail(context + " must be a number, a parameter name, or {param, coeff, offset}");
    }

    SetupLayout layout(const json& j) {
        if (!j.is_object()) fail("layout must be an object");
        check_keys(j, {"paths", "modes", "cutoff"}, "layout");
        const json& jp = require(j, "paths", "layout");
        const json& jm = require(j, "modes", "layout");
        if (!jp.is_array() || jp.empty()) fail("layout.paths must be a nonempty array");
        if (!jm.is_array() || jm.empty()) fail("layout.modes must be a nonempty array");
        std::vector<std::string> paths;
        for (const auto& p : jp) paths.push_back(text(p, "layout.paths entry"));
        std::vector<int> modes;
        for (const auto& m : jm) modes.push_back(integer(m, "layout.modes entry"));
        int cutoff = j.contains("cutoff") ? integer(j["cutoff"], "layout.cutoff") : 1;
        return build_layout(paths, modes, cutoff);
    }

    InitialOp initial_op(const json& j, const SetupLayout& lay) {
        if (!j.is_object() || j.size() != 1) fail("each initial entry must hold exactly one preparation");
        const std::string kind = j.begin().key();
        const json& body = j.begin().value();
        if (kind == "inject") {
            check_keys(body, {"path", "mode", "count"}, "inject");
            PhotonInject inj;
            inj.path = text(require(body, "path", "inject"), "inject.path");
            inj.mode = integer(require(body, "mode", "inject"), "inject.mode");
            inj.count = body.contains("count") ? integer(body["count"], "inject.count") : 1;
            lay.slot_of(inj.path, inj.mode);  // validates the labels
            if (inj.count < 1 || inj.count > lay.cutoff)
                fail("inject.count must lie in [1, cutoff]");
            return inj;
        }
        if (kind == "bell3") {
            check_keys(body, {"path_1", "path_2", "anti"}, "bell3");
            Bell3Spec b;
            b.path_1 = text(require(body, "path_1", "bell3"), "bell3.path_1");
            b.path_2 = text(require(body, "path_2", "bell3"), "bell3.path_2");
            if (body.contains("anti")) {
                if (!body["anti"].is_boolean()) fail("bell3.anti must be a boolean");
                b.anti = body["anti"].get<bool>();
            }
            lay.path_index(b.path_1);
            lay.path_index(b.path_2);
            if (b.path_1 == b.path_2) fail("bell3 needs two distinct paths");
            return b;
        }
        fail("unknown initial preparation '" + kind + "'");
    }

    OpticalElement element(const json& j, const SetupLayout& lay) {
        if (!j.is_object() || j.size() != 1) fail("each element entry must hold exactly one element");
        const std::string kind = j.begin().key();
        const json& body = j.begin().value();
        if (kind == "beam_splitter") {
            check_keys(body, {"path_a", "path_b", "theta", "psi"}, "beam_splitter");
            BeamSplitter bs;
            bs.path_a = text(require(body, "path_a", "beam_splitter"), "beam_splitter.path_a");
            bs.path_b = text(require(body, "path_b", "beam_splitter"), "beam_splitter.path_b");
            bs.theta = expr(require(body, "theta", "beam_splitter"), "beam_splitter.theta");
            double arg = body.contains("psi") ? number(body["psi"], "beam_splitter.psi") : 0.0;
            bs.psi = std::exp(cplx(0, arg));
            lay.path_index(bs.path_a);
            lay.path_index(bs.path_b);
            return bs;
        }
        if (kind == "phase_shifter") {
            check_keys(body, {"path", "mode", "phi"}, "phase_shifter");
            PhaseShifter ps;
            ps.path = text(require(body, "path", "phase_shifter"), "phase_shifter.path");
            if (body.contains("mode")) ps.mode = integer(body["mode"], "phase_shifter.mode");
            ps.phi = expr(require(body, "phi", "phase_shifter"), "phase_shifter.phi");
            if (ps.mode) lay.slot_of(ps.path, *ps.mode);
            else lay.path_index(ps.path);
            return ps;
        }
        if (kind == "dove_prism") {
            check_keys(body, {"path", "phi"}, "dove_prism");
            DovePrism dp;
            dp.path = text(require(body, "path", "dove_prism"), "dove_prism.path");
            dp.phi = expr(require(body, "phi", "dove_prism"), "dove_prism.phi");
            lay.path_index(dp.path);
            return dp;
        }
        if (kind == "swap") {
            check_keys(body, {"path_1", "mode_1", "path_2", "mode_2"}, "swap");
            PhotonicSwap sw;
            sw.path_1 = text(require(body, "path_1", "swap"), "swap.path_1");
            sw.mode_1 = integer(require(body, "mode_1", "swap"), "swap.mode_1");
            sw.path_2 = text(require(body, "path_2", "swap"), "swap.path_2");
            sw.mode_2 = integer(require(body, "mode_2", "swap"), "swap.mode_2");
            lay.slot_of(sw.path_1, sw.mode_1);
            lay.slot_of(sw.path_2, sw.mode_2);
            return sw;
        }
        if (kind == "mirror") {
            check_keys(body, {"path"}, "mirror");
            Mirror m;
            m.path = text(require(body, "path", "mirror"), "mirror.path");
            lay.path_index(m.path);
            return m;
        }
        if (kind == "hologram") {
            check_keys(body, {"path"}, "hologram");
            Hologram h;
            h.path = text(require(body, "path", "hologram"), "hologram.path");
            lay.path_index(h.path);
            return h;
        }
        if (kind == "pair_source") {
            check_keys(body, {"path_a", "mode_a", "path_b", "mode_b", "omega"}, "pair_source");
            PairSource src;
            src.path_a = text(require(body, "path_a", "pair_source"), "pair_source.path_a");
            src.mode_a = integer(require(body, "mode_a", "pair_source"), "pair_source.mode_a");
            src.path_b = text(require(body, "path_b", "pair_source"), "pair_source.path_b");
            src.mode_b = integer(require(body, "mode_b", "pair_source"), "pair_source.mode_b");
            src.omega = expr(require(body, "omega", "pair_source"), "pair_source.omega");
            lay.slot_of(src.path_a, src.mode_a);
            lay.slot_of(src.path_b, src.mode_b);
            return src;
        }
        fail("unknown element '" + kind + "'");
    }

    FockVector target(const json& j, const SetupLayout& lay) {
        if (!j.is_array() || j.empty()) fail("objective.target must be a nonempty array");
        FockVector v{lay, {}};
        for (const auto& entry : j) {
            check_keys(entry, {"amplitude", "state"}, "target entry");
            const json& ja = require(entry, "amplitude", "target entry");
            cplx amp;
            if (ja.is_number()) {
                amp = cplx(ja.get<double>(), 0);
            } else if (ja.is_array() && ja.size() == 2) {
                amp = cplx(number(ja[0], "amplitude"), number(ja[1], "amplitude"));
            } else {
                fail("amplitude must be a number or a [re, im] pair");
            }
            const json& js = require(entry, "state", "target entry");
            if (!js.is_array()) fail("target state must be an array of components");
            std::vector<std::string> comps;
            for (const auto& c : js) comps.push_back(text(c, "target state component"));
            v.amps[parse_fock(lay, comps)] += amp;
        }
        v.prune();
        if (v.amps.empty()) fail("target state is zero");
        v.normalize();
        return v;
    }

    ObjectiveSection objective(const json& j, const SetupLayout& lay) {
        check_keys(j, {"type", "target", "herald", "postselect"}, "objective");
        ObjectiveSection obj;
        std::string type = text(require(j, "type", "objective"), "objective.type");
        obj.target = target(require(j, "target", "objective"), lay);
        if (type == "plain") {
            obj.kind = ObjectiveKind::Plain;
            if (j.contains("herald")) fail("a plain objective does not take a herald");
            if (j.contains("postselect")) fail("a plain objective does not take postselect paths");
            return obj;
        }
        if (type != "post_selected") fail("objective.type must be 'plain' or 'post_selected'");
        obj.kind = ObjectiveKind::PostSelected;
        const json& jh = require(j, "herald", "objective");
        check_keys(jh, {"path", "alpha", "beta"}, "herald");
        HeraldSpec herald;
        herald.path = text(require(jh, "path", "herald"), "herald.path");
        herald.alpha = expr(require(jh, "alpha", "herald"), "herald.alpha");
        herald.beta = expr(require(jh, "beta", "herald"), "herald.beta");
        lay.path_index(herald.path);
        obj.herald = herald;
        const json& jp = require(j, "postselect", "objective");
        if (!jp.is_array() || jp.empty()) fail("objective.postselect must be a nonempty array");
        for (const auto& p : jp) {
            std::string path = text(p, "postselect entry");
            lay.path_index(path);
            obj.postselect.push_back(path);
        }
        return obj;
    }
};

} // namespace

Setup parse_setup_text(const std::string& content, const std::string& origin) {
    Parser p{origin, {}};
    json j;
    try {
        j = json::parse(content);
    } catch (const json::parse_error& e) {
        throw SchemaError(origin + ": " + e.what());
    }
    if (!j.is_object()) p.fail("setup file must hold a JSON object");
    p.check_keys(j, {"layout", "initial", "elements", "parameters", "objective", "simulation",
                     "optimization"},
                 "setup file");

    Setup s;
    s.layout = p.layout(p.require(j, "layout", "setup file"));

    if (j.contains("initial")) {
        if (!j["initial"].is_array()) p.fail("initial must be an array");
        for (const auto& entry : j["initial"]) s.initial.push_back(p.initial_op(entry, s.layout));
    }
    if (j.contains("elements")) {
        if (!j["elements"].is_array()) p.fail("elements must be an array");
        for (const auto& entry : j["elements"]) s.elements.push_back(p.element(entry, s.layout));
    }
    if (j.contains("parameters")) {
        if (!j["parameters"].is_object()) p.fail("parameters must be an object");
        for (const auto& [name, value] : j["parameters"].items())
            s.parameters[name] = p.number(value, "parameter '" + name + "'");
    }
    if (j.contains("objective")) s.objective = p.objective(j["objective"], s.layout);
    if (j.contains("simulation")) {
        const json& js = j["simulation"];
        p.check_keys(js, {"steps", "seed", "shots"}, "simulation");
        if (js.contains("steps")) {
            s.simulation.steps = p.integer(js["steps"], "simulation.steps");
            if (s.simulation.steps < 1) p.fail("simulation.steps must be >= 1");
        }
        if (js.contains("seed")) {
            if (!js["seed"].is_number_integer()) p.fail("simulation.seed must be an integer");
            s.simulation.seed = js["seed"].get<std::uint64_t>();
        }
        if (js.contains("shots")) {
            s.simulation.shots = p.integer(js["shots"], "simulation.shots");
            if (s.simulation.shots < 0) p.fail("simulation.shots must be nonnegative");
        }
    }
    if (j.contains("optimization")) {
        const json& jo = j["optimization"];
        p.check_keys(jo, {"success_threshold", "max_iters", "seeds", "method"}, "optimization");
        if (jo.contains("success_threshold"))
            s.optimization.success_threshold =
                p.number(jo["success_threshold"], "optimization.success_threshold");
        if (jo.contains("max_iters")) {
            s.optimization.max_iters = p.integer(jo["max_iters"], "optimization.max_iters");
            if (s.optimization.max_iters < 0) p.fail("optimization.max_iters must be nonnegative");
        }
        if (jo.contains("seeds")) {
            s.optimization.seeds = p.integer(jo["seeds"], "optimization.seeds");
            if (s.optimization.seeds < 1) p.fail("optimization.seeds must be >= 1");
        }
        if (jo.contains("method")) {
            std::string m = p.text(jo["method"], "optimization.method");
            if (m == "bfgs") s.optimization.method = OptMethod::BFGS;
            else if (m == "gradient_ascent") s.optimization.method = OptMethod::GradientAscent;
            else p.fail("optimization.method must be 'bfgs' or 'gradient_ascent'");
        }
    }

    // Every referenced parameter must be declared.
    for (const auto& name : p.referenced)
        if (!s.parameters.count(name))
            p.fail("parameter '" + name + "' is referenced but not declared in parameters");
    return s;
}

Setup parse_setup_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open setup file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_setup_text(buf.str(), path);
}

// Slots a preparation writes to; used to reject overlapping initial ops.
static void claim_slots(const Setup& s, const InitialOp& op, std::set<int>& used,
                        const char* who) {
    std::vector<int> slots;
    if (const auto* inj = std::get_if<PhotonInject>(&op)) {
        slots.push_back(s.layout.slot_of(inj->path, inj->mode));
    } else {
        const auto& b = std::get<Bell3Spec>(op);
        for (const std::string& path : {b.path_1, b.path_2})
            for (int m : s.layout.modes) slots.push_back(s.layout.slot_of(path, m));
    }
    for (int slot : slots)
        if (!used.insert(slot).second)
            throw ConfigError(std::string(who) + ": initial preparations overlap on a register");
}

GateCircuit build_setup_circuit(const Setup& s, int steps, std::vector<std::string>* warnings) {
    GateCircuit c;
    c.n_qubits = s.layout.total_qubits;
    std::set<int> used;
    for (const auto& op : s.initial) {
        claim_slots(s, op, used, "build_setup_circuit");
        if (const auto* inj = std::get_if<PhotonInject>(&op))
            c.append(compile_photon_inject(s.layout, *inj));
        else {
            const auto& b = std::get<Bell3Spec>(op);
            c.append(bell3_prep_circuit(s.layout, b.path_1, b.path_2, b.anti));
        }
    }
    c.append(compile_setup(s.layout, s.elements, steps, warnings));
    for (const auto& [k, v] : s.parameters) c.params[k] = v;
    return c;
}

Objective build_objective(const Setup& s, int steps) {
    if (s.objective.kind == ObjectiveKind::None)
        throw ConfigError("setup file declares no objective");
    GateCircuit circuit = build_setup_circuit(s, steps);
    if (s.objective.kind == ObjectiveKind::Plain)
        return build_plain_fidelity(s.layout, circuit, s.objective.target);
    return build_post_selected_fidelity(s.layout, circuit, s.objective.target,
                                        *s.objective.herald, s.objective.postselect);
}

int total_photons(const Setup& s) {
    int total = 0;
    for (const auto& op : s.initial) {
        if (const auto* inj = std::get_if<PhotonInject>(&op))
            total += inj->count;
        else
            total += 2;  // bell3: one photon in each of the two paths
    }
    return total;
}

FockVector oracle_initial(const Setup& s) {
    FockVector v = fock_vacuum(s.layout);
    std::set<int> used;
    for (const auto& op : s.initial) {
        claim_slots(s, op, used, "oracle_initial");
        if (const auto* inj = std::get_if<PhotonInject>(&op)) {
            v = apply_element_exact(v, *inj, {});
        } else {
            const auto& b = std::get<Bell3Spec>(op);
            FockVector pair = bell3_fock_vector(s.layout, b.path_1, b.path_2, b.anti);
            FockVector out{s.layout, {}};
            for (const auto& [sv, sa] : v.amps)
                for (const auto& [pv, pa] : pair.amps) {
                    FockState ns = sv;
                    for (int i = 0; i < s.layout.n_slots(); ++i) {
                        if (pv.occ[i] == 0) continue;
                        if (ns.occ[i] != 0)
                            throw EncodingError("bell3 preparation hits an occupied register");
                        ns.occ[i] = pv.occ[i];
                    }
                    out.amps[ns] += sa * pa;
                }
            v = std::move(out);
        }
    }
    return v;
}

FockVector oracle_output(const Setup& s) {
    return apply_setup_exact(oracle_initial(s), s.elements, s.parameters);
}

} // namespace photonq
