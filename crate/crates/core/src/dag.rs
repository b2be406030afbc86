//! Wire-dependency DAG over a circuit's gates, and enumeration of the valid
//! CNOT compilation orders (topological orders of the CNOT sub-DAG).

use crate::circuit::{Circuit, Gate};

/// Directed acyclic dependency graph of a circuit.
///
/// One node per gate, indexed like the gate list. A direct edge connects two
/// gates that touch a common wire consecutively on that wire; gates on
/// disjoint wire sets are connected only through transitivity, if at all.
#[derive(Debug, Clone)]
pub struct CircuitDag {
    num_qubits: usize,
    gates: Vec<Gate>,
    edges: Vec<(usize, usize)>,
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
}

/// Build the dependency DAG: for each wire, consecutive gates on that wire
/// are chained in program order.
pub fn build_dag(circuit: &Circuit) -> CircuitDag {
    let n = circuit.len();
    let mut preds = vec![Vec::new(); n];
    let mut succs = vec![Vec::new(); n];
    let mut edges = Vec::new();
    let mut last_on_wire: Vec<Option<usize>> = vec![None; circuit.num_qubits()];
    for (i, gate) in circuit.gates().iter().enumerate() {
        for &q in gate.qubits() {
            if let Some(prev) = last_on_wire[q] {
                // Both wires of a repeated pair produce the same edge once.
                if !succs[prev].contains(&i) {
                    succs[prev].push(i);
                    preds[i].push(prev);
                    edges.push((prev, i));
                }
            }
            last_on_wire[q] = Some(i);
        }
    }
    CircuitDag {
        num_qubits: circuit.num_qubits(),
        gates: circuit.gates().to_vec(),
        edges,
        preds,
        succs,
    }
}

impl CircuitDag {
    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn gate(&self, node: usize) -> &Gate {
        &self.gates[node]
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn predecessors(&self, node: usize) -> &[usize] {
        &self.preds[node]
    }

    pub fn successors(&self, node: usize) -> &[usize] {
        &self.succs[node]
    }

    /// Gate indices of the CNOT nodes, in program order.
    pub fn cnot_nodes(&self) -> Vec<usize> {
        (0..self.gates.len())
            .filter(|&i| self.gates[i].is_cnot())
            .collect()
    }

    /// Nodes reachable from `node` by directed edges, `node` excluded.
    pub fn reachable_from(&self, node: usize) -> Vec<bool> {
        let mut seen = vec![false; self.gates.len()];
        let mut stack = vec![node];
        while let Some(u) = stack.pop() {
            for &v in &self.succs[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen
    }

    /// Precedence relation restricted to CNOT nodes: `(order_constraints,
    /// cnots)` where an entry `(i, j)` means cnots[i] must come before
    /// cnots[j]. Paths through non-CNOT gates count.
    fn cnot_precedence(&self) -> (Vec<(usize, usize)>, Vec<usize>) {
        let cnots = self.cnot_nodes();
        let mut constraints = Vec::new();
        for (i, &u) in cnots.iter().enumerate() {
            let reach = self.reachable_from(u);
            for (j, &v) in cnots.iter().enumerate() {
                if i != j && reach[v] {
                    constraints.push((i, j));
                }
            }
        }
        (constraints, cnots)
    }

    /// True iff `order` (gate indices) is a permutation of the CNOT nodes
    /// that violates no dependency of the full DAG.
    pub fn is_valid_cnot_order(&self, order: &[usize]) -> bool {
        let cnots = self.cnot_nodes();
        if order.len() != cnots.len() {
            return false;
        }
        let mut seen = vec![false; self.gates.len()];
        for &g in order {
            if g >= self.gates.len() || !self.gates[g].is_cnot() || seen[g] {
                return false;
            }
            seen[g] = true;
        }
        let mut pos = vec![0usize; self.gates.len()];
        for (k, &g) in order.iter().enumerate() {
            pos[g] = k;
        }
        for &u in &cnots {
            let reach = self.reachable_from(u);
            for &v in &cnots {
                if u != v && reach[v] && pos[u] >= pos[v] {
                    return false;
                }
            }
        }
        true
    }
}

/// Valid CNOT orders, plus whether enumeration stopped at the limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnotOrders {
    /// Each order is a list of gate indices of CNOT nodes.
    pub orders: Vec<Vec<usize>>,
    pub truncated: bool,
}

/// Enumerate distinct topological orders of the CNOT sub-DAG, choosing the
/// lowest available gate index first at every step, up to `limit` orders.
pub fn enumerate_cnot_orders(dag: &CircuitDag, limit: usize) -> CnotOrders {
    assert!(limit >= 1, "limit must be positive");
    let (constraints, cnots) = dag.cnot_precedence();
    let n = cnots.len();
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut succs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(i, j) in &constraints {
        preds[j].push(i);
        succs[i].push(j);
    }
    let mut indegree: Vec<usize> = preds.iter().map(|p| p.len()).collect();
    let mut placed = vec![false; n];
    let mut prefix = Vec::with_capacity(n);
    let mut orders = Vec::new();
    let mut overflow = false;

    fn rec(
        n: usize,
        cnots: &[usize],
        succs: &[Vec<usize>],
        indegree: &mut [usize],
        placed: &mut [bool],
        prefix: &mut Vec<usize>,
        orders: &mut Vec<Vec<usize>>,
        limit: usize,
        overflow: &mut bool,
    ) {
        if *overflow {
            return;
        }
        if prefix.len() == n {
            if orders.len() == limit {
                *overflow = true;
            } else {
                orders.push(prefix.iter().map(|&i| cnots[i]).collect());
            }
            return;
        }
        for i in 0..n {
            if !placed[i] && indegree[i] == 0 {
                placed[i] = true;
                prefix.push(i);
                for &j in &succs[i] {
                    indegree[j] -= 1;
                }
                rec(
                    n, cnots, succs, indegree, placed, prefix, orders, limit, overflow,
                );
                for &j in &succs[i] {
                    indegree[j] += 1;
                }
                prefix.pop();
                placed[i] = false;
                if *overflow {
                    return;
                }
            }
        }
    }

    rec(
        n,
        &cnots,
        &succs,
        &mut indegree,
        &mut placed,
        &mut prefix,
        &mut orders,
        limit,
        &mut overflow,
    );
    CnotOrders {
        orders,
        truncated: overflow,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Gate;

    fn circuit(num_qubits: usize, gates: Vec<Gate>) -> Circuit {
        Circuit::new(num_qubits, gates).unwrap()
    }

    #[test]
    fn disjoint_wires_commute() {
        let c = circuit(4, vec![Gate::cnot(0, 1), Gate::cnot(2, 3)]);
        let dag = build_dag(&c);
        assert!(dag.edges().is_empty());
    }

    #[test]
    fn shared_wire_orders_gates() {
        let c = circuit(2, vec![Gate::h(0), Gate::cnot(0, 1)]);
        let dag = build_dag(&c);
        assert_eq!(dag.edges(), &[(0, 1)]);
    }

    #[test]
    fn wire_dependencies_of_three_cnots() {
        let c = circuit(3, vec![Gate::cnot(0, 1), Gate::cnot(1, 2), Gate::cnot(0, 2)]);
        let dag = build_dag(&c);
        let mut edges = dag.edges().to_vec();
        edges.sort_unstable();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn repeated_pair_produces_one_edge() {
        let c = circuit(2, vec![Gate::cnot(0, 1), Gate::cnot(0, 1)]);
        let dag = build_dag(&c);
        assert_eq!(dag.edges(), &[(0, 1)]);
    }

    #[test]
    fn two_independent_cnots_have_two_orders() {
        let c = circuit(4, vec![Gate::cnot(0, 1), Gate::cnot(2, 3)]);
        let out = enumerate_cnot_orders(&build_dag(&c), 10);
        assert_eq!(out.orders, vec![vec![0, 1], vec![1, 0]]);
        assert!(!out.truncated);
    }

    #[test]
    fn chained_cnots_have_one_order() {
        let c = circuit(3, vec![Gate::cnot(0, 1), Gate::cnot(1, 2)]);
        let out = enumerate_cnot_orders(&build_dag(&c), 10);
        assert_eq!(out.orders, vec![vec![0, 1]]);
        assert!(!out.truncated);
    }

    #[test]
    fn limit_truncates_enumeration() {
        let c = circuit(
            6,
            vec![Gate::cnot(0, 1), Gate::cnot(2, 3), Gate::cnot(4, 5)],
        );
        let out = enumerate_cnot_orders(&build_dag(&c), 4);
        assert_eq!(out.orders.len(), 4);
        assert!(out.truncated);
        // 3! = 6 in total when the limit allows.
        let all = enumerate_cnot_orders(&build_dag(&c), 10);
        assert_eq!(all.orders.len(), 6);
        assert!(!all.truncated);
    }

    #[test]
    fn non_cnot_gates_constrain_the_order() {
        // cx(0,1) -> h(1) -> cx(1,2): precedence flows through the Hadamard.
        let c = circuit(3, vec![Gate::cnot(0, 1), Gate::h(1), Gate::cnot(1, 2)]);
        let out = enumerate_cnot_orders(&build_dag(&c), 10);
        assert_eq!(out.orders, vec![vec![0, 2]]);
    }

    #[test]
    fn enumerated_orders_are_valid() {
        let c = circuit(
            5,
            vec![
                Gate::cnot(0, 1),
                Gate::h(2),
                Gate::cnot(2, 3),
                Gate::cnot(1, 2),
                Gate::cnot(3, 4),
            ],
        );
        let dag = build_dag(&c);
        let out = enumerate_cnot_orders(&dag, 1000);
        assert!(!out.orders.is_empty());
        for order in &out.orders {
            assert!(dag.is_valid_cnot_order(order));
        }
        // Orders are pairwise distinct.
        let mut sorted = out.orders.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), out.orders.len());
    }

    #[test]
    fn invalid_orders_are_detected() {
        let c = circuit(3, vec![Gate::cnot(0, 1), Gate::cnot(1, 2)]);
        let dag = build_dag(&c);
        assert!(dag.is_valid_cnot_order(&[0, 1]));
        assert!(!dag.is_valid_cnot_order(&[1, 0]));
        assert!(!dag.is_valid_cnot_order(&[0]));
        assert!(!dag.is_valid_cnot_order(&[0, 0]));
    }
}
