//! Machine- and human-readable run reports. Verification flags are always
//! recomputed by the caller, never copied from the algorithm.

use pathfree::{Coloring, ConstantSchedule, Trace, TransResult};
use serde_json::json;
use sha2::{Digest, Sha256};

pub fn digest(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let out = hasher.finalize();
    out.iter()
        .take(8)
        .map(|b| format!("{b:02x}"))
        .collect::<String>()
}

pub struct RunReport {
    command: &'static str,
    input_digest: String,
    n: usize,
    k_user: usize,
    k_effective: usize,
    pub mode_label: String,
    pub time_ms: f64,
    outcome: Outcome,
}

enum Outcome {
    Pending,
    Transitive {
        vertices: Vec<usize>,
        verified: bool,
        trace: String,
    },
    Coloring {
        classes: Vec<Vec<usize>>,
        verified: bool,
        trace: String,
    },
    Witness {
        vertices: Vec<usize>,
        verified: bool,
    },
}

fn trace_summary(trace: &Trace) -> String {
    format!(
        "base={} trivial={} degenerate={} union_fallbacks={} edges={} pairs={:?} \
         seq_fallbacks={} depth={}",
        trace.base_single,
        trace.trivial_size,
        trace.degenerate_fallbacks,
        trace.union_fallbacks,
        trace.edges_found,
        trace.recursion_pairs,
        trace.unexpected_sequence_fallbacks,
        trace.max_depth,
    )
}

impl RunReport {
    pub fn new(
        command: &'static str,
        input_digest: &str,
        n: usize,
        schedule: &ConstantSchedule,
    ) -> Self {
        RunReport {
            command,
            input_digest: input_digest.to_string(),
            n,
            k_user: schedule.k_user(),
            k_effective: schedule.k(),
            mode_label: String::new(),
            time_ms: 0.0,
            outcome: Outcome::Pending,
        }
    }

    pub fn set_transitive(&mut self, res: &TransResult, verified: bool) {
        self.outcome = Outcome::Transitive {
            vertices: res.vertices.indices(),
            verified,
            trace: trace_summary(&res.trace),
        };
    }

    pub fn set_coloring(&mut self, coloring: &Coloring, trace: &Trace, verified: bool) {
        self.outcome = Outcome::Coloring {
            classes: coloring
                .classes()
                .iter()
                .map(|c| c.indices())
                .collect(),
            verified,
            trace: trace_summary(trace),
        };
    }

    pub fn set_witness(&mut self, vertices: &[usize], verified: bool) {
        self.outcome = Outcome::Witness {
            vertices: vertices.to_vec(),
            verified,
        };
    }

    pub fn emit(&self, as_json: bool) {
        if as_json {
            println!("{}", self.to_json());
        } else {
            self.print_human();
        }
    }

    fn to_json(&self) -> serde_json::Value {
        let (kind, payload, verified) = match &self.outcome {
            Outcome::Pending => ("pending", json!(null), json!(null)),
            Outcome::Transitive {
                vertices,
                verified,
                trace,
            } => (
                "transitive-set",
                json!({ "vertices": vertices, "trace": trace }),
                json!(verified),
            ),
            Outcome::Coloring {
                classes,
                verified,
                trace,
            } => (
                "coloring",
                json!({ "classes": classes, "count": classes.len(), "trace": trace }),
                json!(verified),
            ),
            Outcome::Witness { vertices, verified } => (
                "pk-witness",
                json!({ "vertices": vertices }),
                json!(verified),
            ),
        };
        json!({
            "command": self.command,
            "input": self.input_digest,
            "n": self.n,
            "k_user": self.k_user,
            "k_effective": self.k_effective,
            "mode": self.mode_label,
            "time_ms": self.time_ms,
            "outcome": kind,
            "result": payload,
            "verified": verified,
        })
    }

    fn print_human(&self) {
        println!(
            "input: n={} digest={} k={} (user {}) mode={}",
            self.n, self.input_digest, self.k_effective, self.k_user, self.mode_label
        );
        match &self.outcome {
            Outcome::Pending => println!("outcome: pending"),
            Outcome::Transitive {
                vertices,
                verified,
                trace,
            } => {
                println!("outcome: transitive-set size={}", vertices.len());
                println!(
                    "vertices: {}",
                    vertices
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                println!("verified: {verified}");
                println!("trace: {trace}");
            }
            Outcome::Coloring {
                classes,
                verified,
                trace,
            } => {
                println!("outcome: coloring classes={}", classes.len());
                for (i, class) in classes.iter().enumerate() {
                    println!(
                        "class {i}: {}",
                        class
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(" ")
                    );
                }
                println!("verified: {verified}");
                println!("trace: {trace}");
            }
            Outcome::Witness { vertices, verified } => {
                println!("outcome: pk-witness");
                println!(
                    "witness: {}",
                    vertices
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(" ")
                );
                println!("verified: {verified}");
            }
        }
        println!("time_ms: {:.3}", self.time_ms);
    }
}
