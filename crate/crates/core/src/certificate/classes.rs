//! The 18 classes of red/blue colourings of `E(K5)` up to relabelling and
//! colour swap.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::density::{t_induced, StepGraphon};
use crate::graph::{automorphism_count, canonical_form};
use crate::{Graph, Scalar};

/// Red edges of each class representative, in table order.
const REPRESENTATIVES: [&[(usize, usize)]; 18] = [
    &[],
    &[(3, 2)],
    &[(2, 3), (3, 4)],
    &[(1, 2), (3, 4)],
    &[(1, 4), (2, 4), (3, 4)],
    &[(2, 3), (2, 4), (3, 4)],
    &[(2, 3), (1, 0), (0, 4)],
    &[(1, 2), (2, 3), (3, 4)],
    &[(4, 0), (0, 1), (2, 0), (0, 3)],
    &[(4, 1), (1, 0), (0, 4), (4, 3)],
    &[(2, 3), (0, 4), (1, 4), (3, 4)],
    &[(3, 4), (4, 0), (0, 1), (1, 2)],
    &[(1, 2), (2, 3), (3, 4), (4, 1)],
    &[(0, 1), (1, 4), (4, 0), (2, 3)],
    &[(2, 3), (0, 4), (1, 4), (2, 4), (3, 4)],
    &[(4, 3), (3, 2), (2, 1), (1, 4), (4, 0)],
    &[(0, 1), (1, 4), (4, 0), (1, 2), (4, 3)],
    &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionClass {
    /// 1-based, matching the certificate rows.
    pub index: usize,
    /// Red edges.
    pub representative: Graph,
    /// Blue edges.
    pub complement: Graph,
    pub self_complementary: bool,
    /// Labelled 5-vertex graphs isomorphic to the representative.
    pub orbit: u64,
}

impl PartitionClass {
    /// Labelled red/blue colourings of `E(K5)` falling in this class.
    pub fn labelled_colourings(&self) -> u64 {
        if self.self_complementary {
            self.orbit
        } else {
            2 * self.orbit
        }
    }

    /// Probability that five independent samples from `w` induce a
    /// colouring in this class (red = edge).
    pub fn density<S: Scalar>(&self, w: &StepGraphon<S>) -> S {
        let tau = t_induced(&self.representative, w);
        let orbit = S::from_int(self.orbit as i64);
        if self.self_complementary {
            orbit * tau
        } else {
            orbit * (tau + t_induced(&self.complement, w))
        }
    }
}

pub fn enumerate_partition_classes() -> Vec<PartitionClass> {
    REPRESENTATIVES
        .iter()
        .enumerate()
        .map(|(i, edges)| {
            let representative = Graph::from_edges(5, edges).expect("five vertices");
            let complement = representative.complement();
            PartitionClass {
                index: i + 1,
                self_complementary: canonical_form(&representative) == canonical_form(&complement),
                orbit: 120 / automorphism_count(&representative),
                representative,
                complement,
            }
        })
        .collect()
}

fn lookup() -> &'static HashMap<Graph, usize> {
    static TABLE: OnceLock<HashMap<Graph, usize>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = HashMap::new();
        for class in enumerate_partition_classes() {
            table.insert(canonical_form(&class.representative), class.index);
            table.insert(canonical_form(&class.complement), class.index);
        }
        table
    })
}

/// 1-based class of a 5-vertex red graph, or `None` for other orders.
pub fn classify(red: &Graph) -> Option<usize> {
    if red.n() != 5 {
        return None;
    }
    lookup().get(&canonical_form(red)).copied()
}

/// The 18 class densities of `w`; they sum to 1.
pub fn basis_densities<S: Scalar>(w: &StepGraphon<S>) -> Vec<S> {
    enumerate_partition_classes().iter().map(|c| c.density(w)).collect()
}
