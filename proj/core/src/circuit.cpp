#include "modq/circuit.hpp"

#include <sstream>

#include "modq/domain.hpp"

namespace modq {

void ArithmeticCircuit::validate() const {
    if (n_inputs < 0) throw precondition_error("ArithmeticCircuit: negative input count");
    if (static_cast<int>(outputs.size()) != n_inputs)
        throw precondition_error("ArithmeticCircuit: outputs must have n_inputs entries");
    for (std::size_t i = 0; i < gates.size(); ++i) {
        const Gate& g = gates[i];
        switch (g.op) {
        case Gate::Op::Input:
            if (g.a < 0 || g.a >= n_inputs)
                throw precondition_error("ArithmeticCircuit: input index out of range");
            break;
        case Gate::Op::Const1:
            break;
        case Gate::Op::Add:
        case Gate::Op::Mul:
            if (g.a < 0 || g.b < 0 || g.a >= static_cast<int>(i) || g.b >= static_cast<int>(i))
                throw precondition_error("ArithmeticCircuit: gate references must point backwards");
            break;
        }
    }
    for (int o : outputs)
        if (o < 0 || o >= static_cast<int>(gates.size()))
            throw precondition_error("ArithmeticCircuit: output reference out of range");
}

int ArithmeticCircuit::s() const {
    int s = 0;
    for (auto& g : gates)
        if (g.op != Gate::Op::Input) ++s;
    return s;
}

bool ArithmeticCircuit::has_const_gate() const {
    for (auto& g : gates)
        if (g.op == Gate::Op::Const1) return true;
    return false;
}

Point eval_circuit(const ArithmeticCircuit& c, const Point& v) {
    if (static_cast<int>(v.size()) != c.n_inputs)
        throw precondition_error("eval_circuit: wrong input arity");
    PrimeField f(c.p);
    std::vector<int> val(c.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        switch (g.op) {
        case Gate::Op::Input: val[i] = f.reduce(v[static_cast<std::size_t>(g.a)]); break;
        case Gate::Op::Const1: val[i] = 1; break;
        case Gate::Op::Add:
            val[i] = f.add(val[static_cast<std::size_t>(g.a)], val[static_cast<std::size_t>(g.b)]);
            break;
        case Gate::Op::Mul:
            val[i] = f.mul(val[static_cast<std::size_t>(g.a)], val[static_cast<std::size_t>(g.b)]);
            break;
        }
    }
    Point out(c.outputs.size());
    for (std::size_t i = 0; i < c.outputs.size(); ++i)
        out[i] = val[static_cast<std::size_t>(c.outputs[i])];
    return out;
}

std::uint64_t eval_circuit_rank(const ArithmeticCircuit& c, std::uint64_t rank) {
    return qary_rank(eval_circuit(c, qary_unrank(rank, c.p, c.n_inputs)), c.p);
}

CircuitBuilder::CircuitBuilder(int p, int n_inputs) {
    c_.p = p;
    c_.n_inputs = n_inputs;
    for (int i = 0; i < n_inputs; ++i)
        c_.gates.push_back(Gate{Gate::Op::Input, i, -1});
}

int CircuitBuilder::input(int i) const {
    if (i < 0 || i >= c_.n_inputs) throw precondition_error("CircuitBuilder::input: out of range");
    return i;
}

int CircuitBuilder::one() {
    if (one_ < 0) {
        c_.gates.push_back(Gate{Gate::Op::Const1, -1, -1});
        one_ = static_cast<int>(c_.gates.size()) - 1;
    }
    return one_;
}

int CircuitBuilder::add(int a, int b) {
    c_.gates.push_back(Gate{Gate::Op::Add, a, b});
    return static_cast<int>(c_.gates.size()) - 1;
}

int CircuitBuilder::mul(int a, int b) {
    c_.gates.push_back(Gate{Gate::Op::Mul, a, b});
    return static_cast<int>(c_.gates.size()) - 1;
}

int CircuitBuilder::scale(int a, int c) {
    PrimeField f(c_.p);
    c = f.reduce(c);
    if (c == 0) {
        // A zero wire: p copies of any wire sum to zero.
        if (zero_ < 0) {
            int acc = a; // p copies of a sum to zero
            for (int i = 1; i < c_.p; ++i) acc = add(acc, a);
            zero_ = acc;
        }
        return zero_;
    }
    int acc = a;
    for (int i = 1; i < c; ++i) acc = add(acc, a);
    return acc;
}

int CircuitBuilder::sub(int a, int b) { return add(a, scale(b, c_.p - 1)); }

int CircuitBuilder::constant(int c) {
    PrimeField f(c_.p);
    c = f.reduce(c);
    if (c == 0) return scale(one(), 0);
    return scale(one(), c);
}

int CircuitBuilder::pow_wire(int a, int e) {
    if (e < 1) throw precondition_error("CircuitBuilder::pow_wire: exponent must be >= 1");
    int acc = a;
    for (int i = 1; i < e; ++i) acc = mul(acc, a);
    return acc;
}

int CircuitBuilder::nonzero_indicator(int a) {
    return c_.p == 2 ? a : pow_wire(a, c_.p - 1);
}

int CircuitBuilder::or_wire(int a, int b) {
    // a + b - ab with only (+, x): the subtraction is p-1 added copies.
    int ab = mul(a, b);
    return add(add(a, b), scale(ab, c_.p - 1));
}

std::vector<int> CircuitBuilder::append(const ArithmeticCircuit& other,
                                        const std::vector<int>& inputs) {
    if (other.p != c_.p) throw precondition_error("CircuitBuilder::append: characteristic mismatch");
    if (static_cast<int>(inputs.size()) != other.n_inputs)
        throw precondition_error("CircuitBuilder::append: wrong input wiring");
    std::vector<int> remap(other.gates.size());
    for (std::size_t i = 0; i < other.gates.size(); ++i) {
        const Gate& g = other.gates[i];
        switch (g.op) {
        case Gate::Op::Input: remap[i] = inputs[static_cast<std::size_t>(g.a)]; break;
        case Gate::Op::Const1: remap[i] = one(); break;
        case Gate::Op::Add:
            remap[i] = add(remap[static_cast<std::size_t>(g.a)], remap[static_cast<std::size_t>(g.b)]);
            break;
        case Gate::Op::Mul:
            remap[i] = mul(remap[static_cast<std::size_t>(g.a)], remap[static_cast<std::size_t>(g.b)]);
            break;
        }
    }
    std::vector<int> outs;
    outs.reserve(other.outputs.size());
    for (int o : other.outputs) outs.push_back(remap[static_cast<std::size_t>(o)]);
    return outs;
}

void CircuitBuilder::set_outputs(std::vector<int> outs) { c_.outputs = std::move(outs); }

ArithmeticCircuit preprocess_lonely(const ArithmeticCircuit& c) {
    c.validate();
    const int p = c.p, n = c.n_inputs;
    CircuitBuilder b(p, n);
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = b.input(i);

    std::vector<int> w = v;          // C^0
    std::vector<int> w1;             // C^1
    for (int step = 0; step < p; ++step) {
        w = b.append(c, w);
        if (step == 0) w1 = w;
    }
    // e = 1 iff C^p(v) = v.
    int e = -1;
    for (int i = 0; i < n; ++i) {
        int d = b.sub(w[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
        int ind = b.nonzero_indicator(d);
        int eq = b.sub(b.one(), ind);
        e = e < 0 ? eq : b.mul(e, eq);
    }
    // out_i = v_i + e * (C(v)_i - v_i).
    std::vector<int> outs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int d = b.sub(w1[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i)]);
        outs[static_cast<std::size_t>(i)] = b.add(v[static_cast<std::size_t>(i)], b.mul(e, d));
    }
    b.set_outputs(std::move(outs));
    return b.take();
}

ArithmeticCircuit eliminate_const_gates(const ArithmeticCircuit& c) {
    c.validate();
    if (!c.has_const_gate()) return c;
    const int p = c.p, n = c.n_inputs;
    if (n < 1)
        throw precondition_error("eliminate_const_gates: need at least one input for the indicator");
    CircuitBuilder b(p, n);
    // ind = OR_i 1_{v_i != 0}: equals 1 everywhere except at 0^n, where every
    // (+, x) combination of inputs evaluates to 0 anyway.
    int ind = b.nonzero_indicator(b.input(0));
    for (int i = 1; i < n; ++i) ind = b.or_wire(ind, b.nonzero_indicator(b.input(i)));
    std::vector<int> remap(c.gates.size());
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        switch (g.op) {
        case Gate::Op::Input: remap[i] = b.input(g.a); break;
        case Gate::Op::Const1: remap[i] = ind; break;
        case Gate::Op::Add:
            remap[i] = b.add(remap[static_cast<std::size_t>(g.a)], remap[static_cast<std::size_t>(g.b)]);
            break;
        case Gate::Op::Mul:
            remap[i] = b.mul(remap[static_cast<std::size_t>(g.a)], remap[static_cast<std::size_t>(g.b)]);
            break;
        }
    }
    std::vector<int> outs;
    outs.reserve(c.outputs.size());
    for (int o : c.outputs) outs.push_back(remap[static_cast<std::size_t>(o)]);
    b.set_outputs(std::move(outs));
    ArithmeticCircuit out = b.take();
    if (out.has_const_gate())
        throw error("eliminate_const_gates: internal: CONST1 survived");
    return out;
}

std::vector<ExplicitPolynomial> system_for_circuit(const ArithmeticCircuit& c,
                                                   const std::vector<int>& x_vars,
                                                   const std::vector<int>& y_vars,
                                                   const std::vector<int>& z_vars,
                                                   int n_total_vars) {
    c.validate();
    if (c.has_const_gate())
        throw precondition_error("system_for_circuit: circuit must not contain CONST1 gates");
    if (static_cast<int>(x_vars.size()) != c.n_inputs ||
        static_cast<int>(y_vars.size()) != c.n_inputs ||
        static_cast<int>(z_vars.size()) != c.s())
        throw precondition_error("system_for_circuit: variable block sizes do not match the circuit");

    auto var_mono = [](int v) { return make_monomial({{v, 1}}); };
    std::vector<int> gate_var(c.gates.size());
    std::vector<ExplicitPolynomial> polys;
    int next_z = 0;
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        if (g.op == Gate::Op::Input) {
            gate_var[i] = x_vars[static_cast<std::size_t>(g.a)];
            continue;
        }
        int a1 = z_vars[static_cast<std::size_t>(next_z++)];
        gate_var[i] = a1;
        int a2 = gate_var[static_cast<std::size_t>(g.a)];
        int a3 = gate_var[static_cast<std::size_t>(g.b)];
        ExplicitPolynomial f;
        f.p = c.p;
        f.n_vars = n_total_vars;
        if (g.op == Gate::Op::Add) {
            f.terms.push_back(var_mono(a2));
            f.terms.push_back(var_mono(a3));
        } else {
            f.terms.push_back(var_mono(a2) * var_mono(a3));
        }
        for (int r = 0; r < c.p - 1; ++r) f.terms.push_back(var_mono(a1)); // -a1
        f.normalize();
        polys.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < c.outputs.size(); ++i) {
        ExplicitPolynomial f;
        f.p = c.p;
        f.n_vars = n_total_vars;
        f.terms.push_back(var_mono(gate_var[static_cast<std::size_t>(c.outputs[i])]));
        for (int r = 0; r < c.p - 1; ++r) f.terms.push_back(var_mono(y_vars[i])); // -y_i
        f.normalize();
        polys.push_back(std::move(f));
    }
    return polys;
}

std::pair<PolynomialSystem, GateVariableMap> circuit_to_system(const ArithmeticCircuit& c) {
    const int n = c.n_inputs, s = c.s();
    GateVariableMap map;
    map.total = 2 * n + s;
    for (int i = 0; i < n; ++i) map.x_vars.push_back(i);
    std::vector<int> z_vars;
    for (int i = 0; i < s; ++i) z_vars.push_back(n + i);
    for (int i = 0; i < n; ++i) map.y_vars.push_back(n + s + i);
    PolynomialSystem sys;
    sys.p = c.p;
    sys.n_vars = map.total;
    sys.polys = system_for_circuit(c, map.x_vars, map.y_vars, z_vars, map.total);
    // gate_vars: input gates alias x, others consume z in gate order.
    int next_z = 0;
    for (auto& g : c.gates)
        map.gate_vars.push_back(g.op == Gate::Op::Input ? map.x_vars[static_cast<std::size_t>(g.a)]
                                                        : z_vars[static_cast<std::size_t>(next_z++)]);
    return {std::move(sys), std::move(map)};
}

ArithmeticCircuit table_to_circuit(const std::vector<std::uint64_t>& table, int p, int n,
                                   Budget& budget) {
    std::uint64_t size = checked_pow_u64(static_cast<std::uint64_t>(p),
                                         static_cast<unsigned>(n), "table_to_circuit");
    if (table.size() != size)
        throw precondition_error("table_to_circuit: table size does not match [p]^n");
    budget.require(checked_mul_u64(size, static_cast<std::uint64_t>(n * p + 1),
                                   "table_to_circuit"),
                   "table_to_circuit");
    CircuitBuilder b(p, n);
    // out_j = sum_a table[a]_j * prod_i (1 - (v_i - a_i)^{p-1})
    std::vector<int> out_acc(static_cast<std::size_t>(n), -1);
    for (std::uint64_t a = 0; a < size; ++a) {
        budget.charge(static_cast<std::uint64_t>(n * p + 1), "table_to_circuit");
        std::vector<int> ad = qary_unrank(a, p, n);
        std::vector<int> vd = qary_unrank(table[static_cast<std::size_t>(a)], p, n);
        int match = -1;
        for (int i = 0; i < n; ++i) {
            int d = b.sub(b.input(i), b.constant(ad[static_cast<std::size_t>(i)]));
            int eq = b.sub(b.one(), b.nonzero_indicator(d));
            match = match < 0 ? eq : b.mul(match, eq);
        }
        for (int j = 0; j < n; ++j) {
            int cj = vd[static_cast<std::size_t>(j)];
            if (cj == 0) continue;
            int term = b.scale(match, cj);
            auto& acc = out_acc[static_cast<std::size_t>(j)];
            acc = acc < 0 ? term : b.add(acc, term);
        }
    }
    std::vector<int> outs(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        auto& acc = out_acc[static_cast<std::size_t>(j)];
        outs[static_cast<std::size_t>(j)] = acc < 0 ? b.constant(0) : acc;
    }
    b.set_outputs(std::move(outs));
    return b.take();
}

std::string circuit_to_text(const ArithmeticCircuit& c) {
    std::ostringstream os;
    os << "p " << c.p << "\n";
    os << "inputs " << c.n_inputs << "\n";
    for (std::size_t i = 0; i < c.gates.size(); ++i) {
        const Gate& g = c.gates[i];
        os << i << ' ';
        switch (g.op) {
        case Gate::Op::Input: os << "input " << g.a; break;
        case Gate::Op::Const1: os << "const1"; break;
        case Gate::Op::Add: os << "add " << g.a << ' ' << g.b; break;
        case Gate::Op::Mul: os << "mul " << g.a << ' ' << g.b; break;
        }
        os << "\n";
    }
    os << "outputs";
    for (int o : c.outputs) os << ' ' << o;
    os << "\n";
    return os.str();
}

ArithmeticCircuit circuit_from_text(const std::string& text) {
    std::istringstream is(text);
    ArithmeticCircuit c;
    std::string tok;
    if (!(is >> tok) || tok != "p" || !(is >> c.p))
        throw format_error("circuit_from_text: expected 'p <prime>'");
    if (!(is >> tok) || tok != "inputs" || !(is >> c.n_inputs))
        throw format_error("circuit_from_text: expected 'inputs <n>'");
    while (is >> tok) {
        if (tok == "outputs") {
            int o;
            while (is >> o) c.outputs.push_back(o);
            break;
        }
        // tok is the gate index; validated against position.
        std::size_t idx = std::stoull(tok);
        if (idx != c.gates.size())
            throw format_error("circuit_from_text: gate indices must be consecutive");
        std::string op;
        if (!(is >> op)) throw format_error("circuit_from_text: truncated gate line");
        Gate g;
        if (op == "input") {
            g.op = Gate::Op::Input;
            if (!(is >> g.a)) throw format_error("circuit_from_text: input gate needs an index");
        } else if (op == "const1") {
            g.op = Gate::Op::Const1;
        } else if (op == "add" || op == "mul") {
            g.op = op == "add" ? Gate::Op::Add : Gate::Op::Mul;
            if (!(is >> g.a >> g.b)) throw format_error("circuit_from_text: binary gate needs operands");
        } else {
            throw format_error("circuit_from_text: unknown op '" + op + "'");
        }
        c.gates.push_back(g);
    }
    c.validate();
    return c;
}

} // namespace modq
