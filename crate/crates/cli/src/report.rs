//! JSON report bodies. Keys are emitted in sorted order, so output bytes depend
//! only on the input and the flags.

use serde_json::{json, Value};

use eventown::bounds::BoundTable;
use eventown::search::SearchResult;
use eventown::structure::{
    AtomDecomposition, Certificate, DefectReport, Extraction, GramReport, PairDecomposition,
};
use eventown::{BitSet, GfVector, SetFamily};

pub fn set(s: &BitSet) -> Value {
    json!(s.to_vec())
}

pub fn sets(f: &SetFamily) -> Value {
    Value::Array(f.iter().map(set).collect())
}

fn one_based(ix: &[usize]) -> Value {
    json!(ix.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn residues(v: &GfVector) -> Value {
    json!(v.to_residues())
}

/// Wraps a body with the tool version and the invocation that produced it.
pub fn document(invocation: &str, kind: &str, body: Value) -> Value {
    json!({
        "tool": "eventown",
        "version": env!("CARGO_PKG_VERSION"),
        "invocation": invocation,
        "report": kind,
        "result": body,
    })
}

pub fn closure(dim: usize, closed: Option<&SetFamily>) -> Value {
    json!({
        "closure_dim": dim,
        "closure_size": if dim < 64 { json!(1u64 << dim) } else { Value::Null },
        "sets": closed.map(sets),
    })
}

pub fn atoms(a: &AtomDecomposition) -> Value {
    json!({
        "atoms": a.atoms.iter().map(set).collect::<Vec<_>>(),
        "membership": a.membership.iter().map(|m| one_based(m)).collect::<Vec<_>>(),
        "all_k_wise": a.all_k_wise,
        "all_even": a.all_even(),
        "pairwise_disjoint": a.pairwise_disjoint(),
    })
}

pub fn extraction(k: usize, input: &SetFamily, x: &Extraction, skew_ok: bool) -> Value {
    let rounds: Vec<Value> = x
        .rounds
        .iter()
        .map(|r| {
            json!({
                "removed": r.removed.iter().map(set).collect::<Vec<_>>(),
                "intersection": set(&r.intersection),
                "representative": set(&r.representative),
            })
        })
        .collect();
    json!({
        "k": k,
        "input_size": input.len(),
        "output_size": x.family.len(),
        "rounds": rounds,
        "skew_oddtown": skew_ok,
        "family": sets(&x.family),
    })
}

pub fn defect(d: usize, r: &DefectReport, d_defect: bool) -> Value {
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            json!({
                "vertices": one_based(&c.vertices),
                "alpha": c.alpha,
                "chi": c.chi,
                "exact": c.exact,
                "is_clique": c.is_clique,
            })
        })
        .collect();
    json!({
        "d": d,
        "d_defect": d_defect,
        "vertex_count": r.vertex_count,
        "max_degree": r.max_degree,
        "degrees": r.degrees,
        "components": components,
        "alpha": r.alpha(),
        "chi": r.chi(),
        "all_exact": r.all_exact(),
        "alpha_bound_holds": r.alpha_bound_holds(),
        "full_cliques": r.full_cliques().iter().map(|i| i + 1).collect::<Vec<_>>(),
    })
}

pub fn gram(r: &GramReport) -> Value {
    json!({
        "components": r.components.iter().map(|c| one_based(c)).collect::<Vec<_>>(),
        "component_ranks": r.component_ranks,
        "total_rank": r.total_rank,
        "block_diagonal": r.block_diagonal,
        "alphas": r.alphas,
        "independent_minor_full_rank": r.independent_minor_full_rank,
        "rank_one_cliques": r.rank_one_cliques.iter().map(|i| i + 1).collect::<Vec<_>>(),
        "rank_bound_holds": r.rank_bound_holds(),
        "alpha_rank_holds": r.alpha_rank_holds(),
        "gram": r.gram.rows().iter().map(residues).collect::<Vec<_>>(),
    })
}

pub fn pairs(p: &PairDecomposition) -> Value {
    json!({
        "pairs": p.pairs.iter().map(|&(a, b)| json!([a + 1, b + 1])).collect::<Vec<_>>(),
        "singles": one_based(&p.singles),
        "t": p.t(),
        "s": p.s(),
        "case": p.case.map(|c| c.number()),
        "isotropic": p.isotropic.as_ref().map(residues),
    })
}

pub fn certificate(c: &Certificate) -> Value {
    json!({
        "case": c.case.number(),
        "certificate_rank": c.rank,
        "vectors": c.vectors.iter().map(residues).collect::<Vec<_>>(),
        "full_rank": c.full_rank(),
        "s": c.s,
        "t": c.t,
        "m": c.m,
        "n": c.n,
        "size_bound": c.size_bound(),
        "bound_holds": c.bound_holds(),
    })
}

pub fn search(property: &str, n: usize, allow_empty: bool, r: &SearchResult) -> Value {
    json!({
        "property": property,
        "n": n,
        "allow_empty_set": allow_empty,
        "maximum": r.maximum,
        "exact": r.exact,
        "nodes_explored": r.nodes_explored,
        "witness": sets(&r.witness),
    })
}

pub fn bounds(t: &BoundTable) -> Value {
    json!({
        "all_hold": t.all_hold(),
        "rows": serde_json::to_value(&t.rows).expect("rows serialize"),
    })
}

/// Indented JSON with arrays of scalars kept on one line.
pub fn render(v: &Value) -> String {
    fn scalar(v: &Value) -> bool {
        !matches!(v, Value::Array(_) | Value::Object(_))
    }
    fn flat(v: &Value) -> bool {
        match v {
            Value::Array(items) => items.iter().all(scalar),
            other => scalar(other),
        }
    }
    fn go(v: &Value, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth + 1);
        let close = "  ".repeat(depth);
        match v {
            Value::Array(items) if !items.is_empty() && !flat(v) => {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, depth + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&close);
                out.push(']');
            }
            Value::Object(map) if !map.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&Value::String(k.clone()).to_string());
                    out.push_str(": ");
                    go(x, depth + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&close);
                out.push('}');
            }
            Value::Array(items) => {
                let inner: Vec<String> = items.iter().map(Value::to_string).collect();
                out.push('[');
                out.push_str(&inner.join(", "));
                out.push(']');
            }
            other => out.push_str(&other.to_string()),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out.push('\n');
    out
}
