//! Acyclic coloring by repeated transitive-subset extraction.

use crate::error::{Error, Result};
use crate::findtrans::{find_trans, ConstantSchedule, FindOutcome, PkWitness, Trace};
use crate::tournament::{Tournament, VertexSet};

/// A partition of the vertices into transitive classes.
#[derive(Clone, Debug)]
pub struct Coloring {
    classes: Vec<VertexSet>,
    color_of: Vec<usize>,
}

impl Coloring {
    pub(crate) fn from_classes(n: usize, classes: Vec<VertexSet>) -> Result<Self> {
        let mut color_of = vec![usize::MAX; n];
        for (ci, class) in classes.iter().enumerate() {
            for v in class.iter() {
                if v >= n || color_of[v] != usize::MAX {
                    return Err(Error::Precondition(
                        "classes are not a partition".into(),
                    ));
                }
                color_of[v] = ci;
            }
        }
        if color_of.contains(&usize::MAX) {
            return Err(Error::Precondition("classes miss a vertex".into()));
        }
        Ok(Coloring { classes, color_of })
    }

    pub fn classes(&self) -> &[VertexSet] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.color_of[v]
    }
}

#[derive(Clone, Debug)]
pub enum ColorOutcome {
    /// A verified partition plus the extraction exits folded over every
    /// class.
    Colored(Coloring, Trace),
    /// The extractor found a pattern copy, so the input was not pattern-free.
    Witness(PkWitness),
}

/// Extracts transitive sets from the remaining vertices until none are left;
/// each extraction reruns the full extractor on the induced remainder and
/// maps its answer back to the original indices.
pub fn acyclic_coloring(t: &Tournament, schedule: &ConstantSchedule) -> Result<ColorOutcome> {
    let mut remaining = t.full_set();
    let mut classes = Vec::new();
    let mut trace = Trace::default();
    while !remaining.is_empty() {
        let (sub, map) = t.induced(&remaining)?;
        match find_trans(&sub, schedule)? {
            FindOutcome::Witness(w) => {
                let vertices = w.vertices.iter().map(|&v| map[v]).collect();
                return Ok(ColorOutcome::Witness(PkWitness { vertices }));
            }
            FindOutcome::Transitive(res) => {
                let class =
                    VertexSet::from_indices(t.n(), res.vertices.iter().map(|v| map[v]))?;
                assert!(!class.is_empty(), "extraction returned an empty class");
                remaining = remaining.difference(&class);
                classes.push(class);
                trace.absorb(&res.trace);
            }
        }
    }
    let coloring = Coloring::from_classes(t.n(), classes)?;
    assert!(verify_coloring(t, &coloring));
    Ok(ColorOutcome::Colored(coloring, trace))
}

/// Recomputes the partition and per-class transitivity claims.
pub fn verify_coloring(t: &Tournament, coloring: &Coloring) -> bool {
    let mut seen = VertexSet::empty(t.n());
    for class in coloring.classes() {
        if class.universe() != t.n() || class.is_empty() {
            return false;
        }
        if !seen.is_disjoint(class) {
            return false;
        }
        seen = seen.union(class);
        if !t.is_transitive(class).is_transitive() {
            return false;
        }
    }
    seen.len() == t.n()
}
