#include <doctest.h>

#include <cstdint>
#include <random>
#include <vector>

#include "modq/circuit.hpp"
#include "modq/domain.hpp"

using namespace modq;

namespace {

// Oracle: interpret the gate list directly.
Point oracle_eval(const ArithmeticCircuit& c, const Point& in) {
    std::vector<int> val(c.gates.size());
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        const Gate& gate = c.gates[g];
        switch (gate.op) {
        case Gate::Op::Input: val[g] = in[static_cast<std::size_t>(gate.a)]; break;
        case Gate::Op::Const1: val[g] = 1 % c.p; break;
        case Gate::Op::Add:
            val[g] = (val[static_cast<std::size_t>(gate.a)] +
                      val[static_cast<std::size_t>(gate.b)]) % c.p;
            break;
        case Gate::Op::Mul:
            val[g] = val[static_cast<std::size_t>(gate.a)] *
                     val[static_cast<std::size_t>(gate.b)] % c.p;
            break;
        }
    }
    Point out;
    for (int o : c.outputs) out.push_back(val[static_cast<std::size_t>(o)]);
    return out;
}

ArithmeticCircuit random_circuit(int p, int n, int extra_gates, std::mt19937_64& rng) {
    CircuitBuilder b(p, n);
    std::vector<int> wires;
    for (int i = 0; i < n; ++i) wires.push_back(b.input(i));
    wires.push_back(b.one());
    for (int g = 0; g < extra_gates; ++g) {
        int x = wires[rng() % wires.size()];
        int y = wires[rng() % wires.size()];
        wires.push_back(rng() % 2 ? b.add(x, y) : b.mul(x, y));
    }
    std::vector<int> outs;
    for (int i = 0; i < n; ++i) outs.push_back(wires[rng() % wires.size()]);
    b.set_outputs(outs);
    return b.take();
}

std::uint64_t pow_u(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

TEST_CASE("builder helpers compute what they claim") {
    for (int p : {2, 3, 5}) {
        CircuitBuilder b(p, 2);
        int x = b.input(0), y = b.input(1);
        int s = b.sub(x, y);
        int sc = b.scale(x, 3);
        int c2 = b.constant(2);
        int pw = b.pow_wire(x, 4);
        int nz = b.nonzero_indicator(x);
        b.set_outputs({s, sc});
        auto c = b.circuit();
        c.validate();
        for (int a = 0; a < p; ++a)
            for (int bb = 0; bb < p; ++bb) {
                auto val = oracle_eval(c, {a, bb});
                CHECK(val[0] == ((a - bb) % p + p) % p);
                CHECK(val[1] == 3 * a % p);
                // Probe the other wires through a copy with swapped outputs.
                auto c2c = c;
                c2c.outputs = {c2, pw, nz};
                auto v2 = oracle_eval(c2c, {a, bb});
                CHECK(v2[0] == 2 % p);
                CHECK(v2[1] == a * a % p * a % p * a % p);
                CHECK(v2[2] == (a == 0 ? 0 : 1));
            }
    }
}

TEST_CASE("eval_circuit and eval_circuit_rank match the oracle") {
    std::mt19937_64 rng(206);
    for (int p : {2, 3, 5})
        for (int n : {1, 2})
            for (int rep = 0; rep < 10; ++rep) {
                auto c = random_circuit(p, n, 5, rng);
                std::uint64_t size = pow_u(static_cast<std::uint64_t>(p), n);
                for (std::uint64_t r = 0; r < size; ++r) {
                    Point in = qary_unrank(r, p, n);
                    CHECK(eval_circuit(c, in) == oracle_eval(c, in));
                    CHECK(eval_circuit_rank(c, r) ==
                          qary_rank(oracle_eval(c, in), p));
                }
            }
}

TEST_CASE("table_to_circuit interpolates exactly") {
    std::mt19937_64 rng(59);
    for (int p : {2, 3})
        for (int n : {1, 2}) {
            std::uint64_t size = pow_u(static_cast<std::uint64_t>(p), n);
            for (int rep = 0; rep < 8; ++rep) {
                std::vector<std::uint64_t> table(size);
                for (auto& t : table) t = rng() % size;
                Budget budget;
                auto c = table_to_circuit(table, p, n, budget);
                c.validate();
                for (std::uint64_t v = 0; v < size; ++v)
                    CHECK(eval_circuit_rank(c, v) == table[v]);
            }
        }
}

TEST_CASE("preprocess_lonely keeps p-cycles and fixes everything else") {
    std::mt19937_64 rng(8086);
    for (int p : {2, 3})
        for (int n : {1, 2}) {
            std::uint64_t size = pow_u(static_cast<std::uint64_t>(p), n);
            for (int rep = 0; rep < 8; ++rep) {
                std::vector<std::uint64_t> table(size);
                for (auto& t : table) t = rng() % size;
                Budget budget;
                auto c = table_to_circuit(table, p, n, budget);
                auto cp = preprocess_lonely(c);
                for (std::uint64_t v = 0; v < size; ++v) {
                    // Oracle: v moves iff it lies on a clean p-cycle of the
                    // original map with C(v) != v.
                    std::uint64_t w = v;
                    for (int i = 0; i < p; ++i) w = table[w];
                    bool on_cycle = w == v && table[v] != v;
                    CHECK(eval_circuit_rank(cp, v) == (on_cycle ? table[v] : v));
                }
            }
        }
}

TEST_CASE("eliminate_const_gates agrees off the origin and fixes the origin") {
    std::mt19937_64 rng(1701);
    for (int p : {2, 3})
        for (int n : {1, 2}) {
            std::uint64_t size = pow_u(static_cast<std::uint64_t>(p), n);
            for (int rep = 0; rep < 8; ++rep) {
                std::vector<std::uint64_t> table(size);
                table[0] = 0; // precondition: the map fixes the origin
                for (std::uint64_t v = 1; v < size; ++v) table[v] = rng() % size;
                Budget budget;
                auto c = table_to_circuit(table, p, n, budget);
                auto ce = eliminate_const_gates(c);
                ce.validate();
                CHECK(!ce.has_const_gate());
                for (std::uint64_t v = 0; v < size; ++v)
                    CHECK(eval_circuit_rank(ce, v) == table[v]);
            }
        }
}

TEST_CASE("circuit text round-trip") {
    std::mt19937_64 rng(90210);
    for (int rep = 0; rep < 10; ++rep) {
        int p = rep % 2 ? 2 : 3;
        auto c = random_circuit(p, 2, 4, rng);
        auto c2 = circuit_from_text(circuit_to_text(c));
        CHECK(c2.p == c.p);
        CHECK(c2.n_inputs == c.n_inputs);
        CHECK(c2.outputs == c.outputs);
        for (std::uint64_t v = 0; v < pow_u(static_cast<std::uint64_t>(p), 2); ++v)
            CHECK(eval_circuit_rank(c2, v) == eval_circuit_rank(c, v));
    }
    CHECK_THROWS_AS(circuit_from_text("p 3\nbogus"), format_error);
}

TEST_CASE("circuit equations characterize the graph of the map") {
    std::mt19937_64 rng(4004);
    for (int p : {2, 3}) {
        // Constant-free circuit: the equation builder requires (+, x) gates only.
        CircuitBuilder b(p, 2);
        std::vector<int> wires{b.input(0), b.input(1)};
        for (int g = 0; g < 3; ++g) {
            int x = wires[rng() % wires.size()];
            int y = wires[rng() % wires.size()];
            wires.push_back(rng() % 2 ? b.add(x, y) : b.mul(x, y));
        }
        b.set_outputs({wires[rng() % wires.size()], wires[rng() % wires.size()]});
        auto c = b.take();
        auto [sys, layout] = circuit_to_system(c);
        CHECK(sys.n_vars == 2 * 2 + c.s());
        // For every input x there is exactly one consistent (y, z), and its
        // y block is C(x).
        std::uint64_t size = pow_u(static_cast<std::uint64_t>(p), sys.n_vars);
        REQUIRE(size <= (1u << 22));
        std::vector<std::uint64_t> roots_per_x(pow_u(static_cast<std::uint64_t>(p), 2), 0);
        for (std::uint64_t r = 0; r < size; ++r) {
            Point full = qary_unrank(r, p, sys.n_vars);
            if (!sys.vanishes_at(full)) continue;
            Point x, y;
            for (int i : layout.x_vars) x.push_back(full[static_cast<std::size_t>(i)]);
            for (int i : layout.y_vars) y.push_back(full[static_cast<std::size_t>(i)]);
            CHECK(oracle_eval(c, x) == y);
            ++roots_per_x[qary_rank(x, p)];
        }
        for (auto cnt : roots_per_x) CHECK(cnt == 1);
    }
}
