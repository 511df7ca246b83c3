//! Table, JSON and DOT renderings of an [`ExtensionReport`].

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use valext_core::arith::Value;
use valext_core::basefield::{format_poly, ValuedField};
use valext_core::extend::{ExtensionReport, Outcome, TreeNode};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputJson {
    pub base: String,
    pub p: u64,
    pub poly: String,
    pub shift: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafJson {
    pub e: u64,
    pub f: u64,
    pub d: u64,
    pub beta_chain: Vec<String>,
    pub key_polynomials: Vec<String>,
    pub generator_value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub input: InputJson,
    pub leaves: Vec<LeafJson>,
    pub unique: bool,
    pub sum_efd: u64,
    pub invariants_checked: usize,
}

fn values(v: &[Value]) -> Vec<String> {
    v.iter().map(Value::to_string).collect()
}

/// The serialized form. Key polynomials are in the normalized variable.
pub fn report_json<K: ValuedField>(field: &K, report: &ExtensionReport<K>) -> ReportJson {
    ReportJson {
        input: InputJson {
            base: report.kind.name().to_string(),
            p: report.p,
            poly: format_poly(field, &report.input, "x"),
            shift: report.shift,
        },
        leaves: report
            .leaves
            .iter()
            .map(|l| LeafJson {
                e: l.e,
                f: l.f,
                d: l.d,
                beta_chain: values(&l.beta_chain),
                key_polynomials: l.key_polynomials.iter().map(|q| format_poly(field, q, "x")).collect(),
                generator_value: l.generator_value.to_string(),
            })
            .collect(),
        unique: report.unique,
        sum_efd: report.sum_efd,
        invariants_checked: report.invariant_log.len(),
    }
}

pub fn render_json<K: ValuedField>(field: &K, report: &ExtensionReport<K>) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(field, report)).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn render_table<K: ValuedField>(field: &K, report: &ExtensionReport<K>) -> String {
    let json = report_json(field, report);
    let unique = if json.unique { "yes" } else { "no" };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# base={} p={} poly={} shift={}",
        json.input.base, json.input.p, json.input.poly, json.input.shift
    );
    for l in &json.leaves {
        let _ = writeln!(
            out,
            "e={} f={} d={} unique={unique} beta=[{}] nu(x)={} keys=[{}]",
            l.e,
            l.f,
            l.d,
            l.beta_chain.join(", "),
            l.generator_value,
            l.key_polynomials.join(", ")
        );
    }
    let _ = writeln!(
        out,
        "# leaves={} sum_efd={} invariants_checked={}",
        json.leaves.len(),
        json.sum_efd,
        json.invariants_checked
    );
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

struct Dot<'a, K: ValuedField> {
    field: &'a K,
    out: String,
    next: usize,
}

impl<K: ValuedField> Dot<'_, K> {
    fn id(&mut self, prefix: char) -> String {
        self.next += 1;
        format!("{prefix}{}", self.next - 1)
    }

    fn node(&mut self, node: &TreeNode<K>) -> String {
        let id = self.id('n');
        let deltas: Vec<String> = node
            .branches
            .iter()
            .filter_map(|b| b.invariants.as_ref().map(|i| i.delta.to_string()))
            .collect();
        let deltas = if deltas.is_empty() { String::from("-") } else { deltas.join(",") };
        let label = format!(
            "deg Q={} ({})\\nδ={deltas} θ={}",
            node.key.deg(),
            escape(&format_poly(self.field, &node.key, "x")),
            node.theta
        );
        let _ = writeln!(self.out, "  {id} [shape=box, label=\"{label}\"];");
        for branch in &node.branches {
            for child in &branch.children {
                let target = match &child.outcome {
                    Outcome::Node(n) => self.node(n),
                    Outcome::Leaf(l) => {
                        let leaf = self.id('l');
                        let _ = writeln!(
                            self.out,
                            "  {leaf} [shape=ellipse, label=\"e={} f={} d={}\"];",
                            l.e, l.f, l.d
                        );
                        leaf
                    }
                };
                let psi = match &child.psi {
                    Some(psi) => escape(&branch.field.poly_to_string(psi, "y")),
                    None => String::from("-"),
                };
                let _ = writeln!(
                    self.out,
                    "  {id} -> {target} [label=\"β={}\\nψ={psi} m={}\"];",
                    branch.beta, child.multiplicity
                );
            }
        }
        id
    }
}

/// The tree of nodes and leaves; nodes show `deg Q`, `δ` per side and `θ`,
/// edges show `β`, `ψ` and its multiplicity.
pub fn render_dot<K: ValuedField>(field: &K, report: &ExtensionReport<K>) -> String {
    let mut dot = Dot { field, out: String::from("digraph valext {\n"), next: 0 };
    dot.node(&report.tree);
    dot.out.push_str("}\n");
    dot.out
}
