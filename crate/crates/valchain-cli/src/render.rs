//! JSON report construction and the DOT chain diagram. All numeric output is
//! exact value text; decimal approximations appear only when a digit count is
//! supplied, in companion `*_approx` fields.

use serde_json::{json, Map, Value as Json};

use valchain_core::chain::{AugRecord, Chain};
use valchain_core::enlarge::{DetLimitReport, EnlargementCase, PresentationStage, StageIndex};
use valchain_core::error::Result;
use valchain_core::invariants::{InvariantReport, KahlerReport, NonDecreasingSequenceReport};
use valchain_core::poly::Poly;
use valchain_core::value::Value;

use crate::parse::approx_decimal;

/// Rendering options; `approx` is the digit count of the optional decimal
/// companions.
#[derive(Clone, Copy)]
pub struct Rendering {
    pub approx: Option<u32>,
}

impl Rendering {
    pub fn put(&self, map: &mut Map<String, Json>, key: &str, v: &Value) {
        map.insert(key.into(), json!(v.to_string()));
        if let Some(digits) = self.approx {
            map.insert(format!("{key}_approx"), json!(approx_decimal(v, digits)));
        }
    }

    pub fn put_seq(&self, map: &mut Map<String, Json>, key: &str, vs: &[Value]) {
        let texts: Vec<String> = vs.iter().map(Value::to_string).collect();
        map.insert(key.into(), json!(texts));
        if let Some(digits) = self.approx {
            let approx: Vec<String> = vs.iter().map(|v| approx_decimal(v, digits)).collect();
            map.insert(format!("{key}_approx"), json!(approx));
        }
    }

    pub fn single(&self, key: &str, v: &Value) -> Json {
        let mut map = Map::new();
        self.put(&mut map, key, v);
        Json::Object(map)
    }

    pub fn different_report(&self, report: &InvariantReport) -> Json {
        let mut map = Map::new();
        self.put(&mut map, "different", &report.different);
        self.put(&mut map, "log_different", &report.log_different);
        self.put(&mut map, "step", &report.step);
        self.put(&mut map, "v_f", &report.v_f);
        self.put(&mut map, "v_f_prime", &report.v_f_prime);
        self.put(&mut map, "fudge", &report.fudge);
        map.insert("derivative_vanishes".into(), json!(report.derivative_vanishes));
        if !report.stage_terms.is_empty() {
            self.put_seq(&mut map, "stage_terms", &report.stage_terms);
        }
        Json::Object(map)
    }

    pub fn kahler_report(&self, report: &KahlerReport) -> Json {
        let mut map = Map::new();
        self.put(&mut map, "kahler_dT", &report.value);
        let terms: Vec<Json> = report
            .terms
            .iter()
            .map(|(key, term)| {
                let mut t = Map::new();
                t.insert("key".into(), json!(key.to_string()));
                match term {
                    Some(v) => self.put(&mut t, "term", v),
                    None => {
                        t.insert("term".into(), Json::Null);
                    }
                }
                Json::Object(t)
            })
            .collect();
        map.insert("terms".into(), json!(terms));
        Json::Object(map)
    }

    pub fn sequence_report(&self, report: &NonDecreasingSequenceReport) -> Json {
        let mut map = Map::new();
        self.put_seq(&mut map, "terms", &report.terms);
        map.insert("non_decreasing".into(), json!(report.non_decreasing));
        Json::Object(map)
    }

    pub fn enlargement(
        &self,
        case: EnlargementCase,
        v_phi: &Value,
        mu: &Value,
        stages: &[PresentationStage],
        check: Option<&DetLimitReport>,
    ) -> Json {
        let mut map = Map::new();
        map.insert("case".into(), json!(case_name(case)));
        self.put(&mut map, "v_phi", v_phi);
        self.put(&mut map, "mu", mu);
        let stage_objs: Vec<Json> = stages.iter().map(|s| self.stage(s)).collect();
        map.insert("stages".into(), json!(stage_objs));
        if let Some(r) = check {
            let mut c = Map::new();
            self.put(&mut c, "target", &r.target);
            self.put_seq(&mut c, "stage_valuations", &r.stage_valuations);
            c.insert("within_tolerance".into(), json!(r.within_tolerance));
            c.insert("monotone".into(), json!(r.monotone));
            c.insert("pass".into(), json!(r.pass));
            map.insert("limit_check".into(), Json::Object(c));
        }
        Json::Object(map)
    }

    fn stage(&self, s: &PresentationStage) -> Json {
        let mut map = Map::new();
        let mut idx = Map::new();
        match &s.index {
            StageIndex::Aleph { v_beta, ell, d, e, m } => {
                idx.insert("kind".into(), json!("aleph"));
                self.put(&mut idx, "v_beta", v_beta);
                idx.insert("ell".into(), json!(ell));
                idx.insert("d".into(), json!(d));
                idx.insert("e".into(), json!(e));
                idx.insert("m".into(), json!(m));
            }
            StageIndex::Beth { v_alpha, v_beta } => {
                idx.insert("kind".into(), json!("beth"));
                self.put(&mut idx, "v_alpha", v_alpha);
                self.put(&mut idx, "v_beta", v_beta);
            }
            StageIndex::Gimel { i, a_even, b_even, a_odd, b_odd, w_x, w_y } => {
                idx.insert("kind".into(), json!("gimel"));
                idx.insert("i".into(), json!(i));
                idx.insert("a_even".into(), json!(a_even.to_string()));
                idx.insert("b_even".into(), json!(b_even.to_string()));
                idx.insert("a_odd".into(), json!(a_odd.to_string()));
                idx.insert("b_odd".into(), json!(b_odd.to_string()));
                self.put(&mut idx, "w_x", w_x);
                self.put(&mut idx, "w_y", w_y);
            }
            StageIndex::Daleth { v_alpha } => {
                idx.insert("kind".into(), json!("daleth"));
                self.put(&mut idx, "v_alpha", v_alpha);
            }
        }
        map.insert("index".into(), Json::Object(idx));
        map.insert("generators".into(), json!(s.generators));
        map.insert("relations".into(), json!(s.relations));
        self.put(&mut map, "jac_det_valuation", &s.jac_det_valuation);
        Json::Object(map)
    }
}

fn case_name(case: EnlargementCase) -> &'static str {
    match case {
        EnlargementCase::Aleph => "aleph",
        EnlargementCase::Beth => "beth",
        EnlargementCase::Gimel => "gimel",
        EnlargementCase::Daleth => "daleth",
    }
}

fn dot_escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A DOT digraph of the chain: one node per prefix labeled with its key and
/// radius, edges labeled with per-record steps, and family prefixes as
/// subgraph clusters. Output is deterministic byte-for-byte for a given
/// chain.
pub fn export_dot(chain: &Chain) -> Result<String> {
    let steps = chain.step_breakdown()?;
    let mut out = String::from("digraph chain {\n  rankdir=LR;\n  node [shape=box];\n");
    let seed_key = Poly::t_minus(chain.seed.field, chain.seed.center.clone());
    out.push_str(&format!(
        "  n0 [label=\"{}\"];\n",
        dot_escape(&format!("seed {} @ {}", seed_key, chain.seed.radius))
    ));
    for (i, rec) in chain.augs.iter().enumerate() {
        let id = i + 1;
        let label = match rec {
            AugRecord::Ordinary { phi, mu } => format!("ordinary {phi} @ {mu}"),
            AugRecord::Limit { phi, mu, .. } => format!("limit {phi} @ {mu}"),
            AugRecord::StableFamily { family } => {
                format!("stable family @ {}", family.declared_gamma_limit)
            }
        };
        out.push_str(&format!("  n{id} [label=\"{}\"];\n", dot_escape(&label)));
        if let AugRecord::Limit { family, .. } | AugRecord::StableFamily { family } = rec {
            out.push_str(&format!(
                "  subgraph cluster_{id} {{\n    label=\"family (gamma limit {})\";\n",
                dot_escape(&family.declared_gamma_limit.to_string())
            ));
            for (j, (psi, gamma)) in family.pairs.iter().enumerate() {
                out.push_str(&format!(
                    "    n{id}_f{j} [label=\"{}\"];\n",
                    dot_escape(&format!("{psi} @ {gamma}"))
                ));
            }
            for j in 1..family.pairs.len() {
                out.push_str(&format!("    n{id}_f{} -> n{id}_f{j};\n", j - 1));
            }
            out.push_str("  }\n");
            if !family.pairs.is_empty() {
                out.push_str(&format!(
                    "  n{id}_f{} -> n{id} [style=dashed];\n",
                    family.pairs.len() - 1
                ));
            }
        }
        out.push_str(&format!(
            "  n{} -> n{id} [label=\"{}\"];\n",
            id - 1,
            dot_escape(&steps[i].to_string())
        ));
    }
    out.push_str("}\n");
    Ok(out)
}
