#ifndef MODQ_CIRCUIT_HPP
#define MODQ_CIRCUIT_HPP

#include <vector>

#include "modq/poly.hpp"

namespace modq {

// A straight-line arithmetic program over F_p with gate set (+, x, 1).
// Gates are topologically ordered; the first n_inputs gates are conventionally
// the inputs, but INPUT gates may appear anywhere as long as references point
// backwards.  The circuit is an endofunction: outputs has n_inputs entries.
struct Gate {
    enum class Op { Input, Const1, Add, Mul };
    Op op = Op::Input;
    int a = -1; // INPUT: input index; ADD/MUL: left operand gate
    int b = -1; // ADD/MUL: right operand gate
};

struct ArithmeticCircuit {
    int p = 2;
    int n_inputs = 0;
    std::vector<Gate> gates;
    std::vector<int> outputs;

    void validate() const; // throws precondition_error on malformed wiring
    int gate_count() const { return static_cast<int>(gates.size()); }
    // Non-input gate count, i.e. the "s" in the 2n+s variable layout.
    int s() const;
    bool has_const_gate() const;
};

Point eval_circuit(const ArithmeticCircuit& c, const Point& v);

// Convenience for rank-encoded domains [p]^n (digit 0 most significant).
std::uint64_t eval_circuit_rank(const ArithmeticCircuit& c, std::uint64_t rank);

// Incremental construction helper.  Inputs are pre-registered as gates
// 0..n_inputs-1.
class CircuitBuilder {
public:
    CircuitBuilder(int p, int n_inputs);

    int input(int i) const;
    int one();                 // CONST1 (cached)
    int add(int a, int b);
    int mul(int a, int b);
    int scale(int a, int c);   // c >= 1 copies of a summed; c reduced mod p
    int sub(int a, int b);     // a + (p-1) b
    int constant(int c);       // built from one(); c reduced mod p
    int pow_wire(int a, int e);
    int nonzero_indicator(int a); // a^{p-1}
    int or_wire(int a, int b);    // a + b - ab, for {0,1}-valued wires

    // Inline another circuit with the given wires as its inputs; returns its
    // output wires.
    std::vector<int> append(const ArithmeticCircuit& other, const std::vector<int>& inputs);

    void set_outputs(std::vector<int> outs);
    const ArithmeticCircuit& circuit() const { return c_; }
    ArithmeticCircuit take() { return std::move(c_); }

private:
    ArithmeticCircuit c_;
    int one_ = -1;
    int zero_ = -1;
};

// The "lonely" preprocessing: C'(v) = C(v) when C^p(v) = v, else v.  So
// C'(v) != v exactly when v lies on a p-cycle of C with C(v) != v.
ArithmeticCircuit preprocess_lonely(const ArithmeticCircuit& c);

// Replace CONST1 gates by the indicator OR_i 1_{v_i != 0} built from
// x^{p-1} powers and a+b-ab combinations.  Precondition (caller-guaranteed):
// C(0^n) = 0^n.  The output has only (+, x) gates, agrees with C off 0^n and
// fixes 0^n.
ArithmeticCircuit eliminate_const_gates(const ArithmeticCircuit& c);

// Variable layout for the circuit equations f_C(x, y, z).
struct GateVariableMap {
    std::vector<int> x_vars;    // one per input
    std::vector<int> gate_vars; // one per gate: input gates alias x_vars,
                                // other gates get z variables
    std::vector<int> y_vars;    // one per output
    int total = 0;
};

// One zecote polynomial per (+, x) gate (a2+a3-a1 resp. a2*a3-a1) plus
// gate(out_i) - y_i per output, over the provided variable blocks.
// C(x) = y iff f_C(x, y, z) = 0 for the unique consistent z.
std::vector<ExplicitPolynomial> system_for_circuit(const ArithmeticCircuit& c,
                                                   const std::vector<int>& x_vars,
                                                   const std::vector<int>& y_vars,
                                                   const std::vector<int>& z_vars,
                                                   int n_total_vars);

// Default layout (x | z | y) over 2n+s variables.
std::pair<PolynomialSystem, GateVariableMap> circuit_to_system(const ArithmeticCircuit& c);

// Pointwise interpolation of a table oracle over [p]^n into a (+, x, 1)
// circuit; exponential size, intended for desk-scale domains only.
ArithmeticCircuit table_to_circuit(const std::vector<std::uint64_t>& table, int p, int n,
                                   Budget& budget);

// Serialization: "p <p>", "inputs <n>", one line per gate
// ("<idx> input <i>" | "<idx> const1" | "<idx> add <a> <b>" |
//  "<idx> mul <a> <b>"), then "outputs <g1> ... <gn>".
std::string circuit_to_text(const ArithmeticCircuit& c);
ArithmeticCircuit circuit_from_text(const std::string& text);

} // namespace modq

#endif
