//! Registry of exact values, executed by `formwidth verify`.
//!
//! The manifest has one case per line with five tab-separated fields:
//! `id`, `kind`, `inputs`, `expected`, `citation`. Blank lines and lines
//! starting with `#` are skipped. Input grammars per kind:
//!
//! | kind                | inputs                                   | expected |
//! |---------------------|------------------------------------------|----------|
//! | `fw-equals`         | `word`                                   | integer  |
//! | `fw-greater`        | `word`                                   | integer  |
//! | `fw-witness-avoids` | `word;s`                                 | boolean  |
//! | `metric-equals`     | `l;word` or `r;word`                     | integer  |
//! | `bounds-sandwich`   | `c=3;e=1,1,1`                            | boolean  |
//! | `avoider-avoids`    | `es;r;s`, `alt;c;k` or `two;word`        | boolean  |
//! | `ex-equals`         | `word;n;sparsity`                        | integer  |
//! | `inequality-holds`  | `word;c;d;n`                             | boolean  |

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::grammar::parse_word;
use crate::error::{Error, Result};
use crate::extremal::{check_klazar_inequality, ex_search, ExError, ExQuery, SearchConfig};
use crate::formation::{
    avoids_all_binary, build_alt_avoider, build_es_avoider, build_two_letter_avoider,
    formation_contains, fw_with, fw_witness, FwConfig, FwOutcome,
};
use crate::metrics::{binary_closed_forms, l_metric, r_metric, BinaryFormationSpec};
use crate::word::{alt, Word};

/// The manifest shipped with the crate.
pub const BUILTIN_MANIFEST: &str = include_str!("../../registry/theorems.tsv");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    FwEquals,
    FwGreater,
    FwWitnessAvoids,
    MetricEquals,
    BoundsSandwich,
    AvoiderAvoids,
    ExEquals,
    InequalityHolds,
}

impl FromStr for CaseKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "fw-equals" => CaseKind::FwEquals,
            "fw-greater" => CaseKind::FwGreater,
            "fw-witness-avoids" => CaseKind::FwWitnessAvoids,
            "metric-equals" => CaseKind::MetricEquals,
            "bounds-sandwich" => CaseKind::BoundsSandwich,
            "avoider-avoids" => CaseKind::AvoiderAvoids,
            "ex-equals" => CaseKind::ExEquals,
            "inequality-holds" => CaseKind::InequalityHolds,
            other => return Err(format!("unknown kind {other:?}")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Expected {
    Int(usize),
    Bool(bool),
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Int(v) => write!(f, "{v}"),
            Expected::Bool(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCase {
    pub id: String,
    pub kind: CaseKind,
    pub inputs: String,
    pub expected: Expected,
    pub citation: String,
}

/// A case whose inputs have been parsed and checked.
#[derive(Clone, Debug)]
enum Plan {
    FwEquals(Word, usize),
    FwGreater(Word, usize),
    WitnessPresent(Word, usize, bool),
    Metric {
        right: bool,
        word: Word,
        value: usize,
    },
    Sandwich(BinaryFormationSpec),
    EsAvoider(usize, usize),
    AltAvoider(usize, usize),
    TwoLetterAvoider(Word),
    ExEquals(ExQuery, usize),
    Klazar {
        word: Word,
        c: usize,
        d: usize,
        n: usize,
    },
}

impl TheoremCase {
    fn malformed(&self, message: impl Into<String>) -> Error {
        Error::Registry {
            id: self.id.clone(),
            message: message.into(),
        }
    }

    fn plan(&self, config: &RunConfig) -> Result<Plan> {
        let fields: Vec<&str> = self.inputs.split(';').map(str::trim).collect();
        let word = |i: usize| -> Result<Word> {
            let text = fields
                .get(i)
                .ok_or_else(|| self.malformed("missing word"))?;
            parse_word(text).map_err(|e| self.malformed(e.to_string()))
        };
        let int = |i: usize| -> Result<usize> {
            fields
                .get(i)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| self.malformed(format!("field {} must be an integer", i + 1)))
        };
        let arity = |n: usize| -> Result<()> {
            if fields.len() == n {
                Ok(())
            } else {
                Err(self.malformed(format!("expected {n} input fields, found {}", fields.len())))
            }
        };
        let expect_int = || match self.expected {
            Expected::Int(v) => Ok(v),
            Expected::Bool(_) => Err(self.malformed("expected value must be an integer")),
        };
        let expect_bool = || match self.expected {
            Expected::Bool(v) => Ok(v),
            Expected::Int(_) => Err(self.malformed("expected value must be true or false")),
        };

        Ok(match self.kind {
            CaseKind::FwEquals => {
                arity(1)?;
                Plan::FwEquals(word(0)?, expect_int()?)
            }
            CaseKind::FwGreater => {
                arity(1)?;
                Plan::FwGreater(word(0)?, expect_int()?)
            }
            CaseKind::FwWitnessAvoids => {
                arity(2)?;
                Plan::WitnessPresent(word(0)?, int(1)?, expect_bool()?)
            }
            CaseKind::MetricEquals => {
                arity(2)?;
                let right = match fields[0] {
                    "l" => false,
                    "r" => true,
                    other => return Err(self.malformed(format!("unknown metric {other:?}"))),
                };
                Plan::Metric {
                    right,
                    word: word(1)?,
                    value: expect_int()?,
                }
            }
            CaseKind::BoundsSandwich => {
                expect_bool()?;
                Plan::Sandwich(
                    self.inputs
                        .parse()
                        .map_err(|e: Error| self.malformed(e.to_string()))?,
                )
            }
            CaseKind::AvoiderAvoids => {
                expect_bool()?;
                match fields[0] {
                    "es" => {
                        arity(3)?;
                        Plan::EsAvoider(int(1)?, int(2)?)
                    }
                    "alt" => {
                        arity(3)?;
                        let k = int(2)?;
                        if k < 2 {
                            return Err(self.malformed("alt avoider needs k >= 2"));
                        }
                        Plan::AltAvoider(int(1)?, k)
                    }
                    "two" => {
                        arity(2)?;
                        Plan::TwoLetterAvoider(word(1)?)
                    }
                    other => return Err(self.malformed(format!("unknown avoider {other:?}"))),
                }
            }
            CaseKind::ExEquals => {
                arity(3)?;
                let mut q = ExQuery::with_sparsity(word(0)?, int(1)?, int(2)?)
                    .map_err(|e| self.malformed(e.to_string()))?;
                q.length_cap = config.length_cap.max(q.n);
                Plan::ExEquals(q, expect_int()?)
            }
            CaseKind::InequalityHolds => {
                arity(4)?;
                expect_bool()?;
                Plan::Klazar {
                    word: word(0)?,
                    c: int(1)?,
                    d: int(2)?,
                    n: int(3)?,
                }
            }
        })
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<TheoremCase>> {
    let mut cases = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let id = fields[0].trim().to_string();
        let err = |message: String| Error::Registry {
            id: if id.is_empty() {
                format!("line {}", lineno + 1)
            } else {
                id.clone()
            },
            message,
        };
        if fields.len() != 5 {
            return Err(err(format!(
                "expected 5 tab-separated fields, found {}",
                fields.len()
            )));
        }
        let kind = fields[1].trim().parse().map_err(err)?;
        let expected = match fields[3].trim() {
            "true" => Expected::Bool(true),
            "false" => Expected::Bool(false),
            v => Expected::Int(
                v.parse()
                    .map_err(|_| err(format!("bad expected value {v:?}")))?,
            ),
        };
        cases.push(TheoremCase {
            id: id.clone(),
            kind,
            inputs: fields[2].trim().to_string(),
            expected,
            citation: fields[4].trim().to_string(),
        });
    }
    Ok(cases)
}

pub fn builtin_registry() -> Vec<TheoremCase> {
    parse_manifest(BUILTIN_MANIFEST).expect("shipped manifest parses")
}

#[derive(Clone, Copy, Debug)]
pub struct RunConfig {
    pub s_max: usize,
    pub length_cap: usize,
    pub node_budget: u64,
    pub parallel: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            s_max: 24,
            length_cap: crate::extremal::DEFAULT_LENGTH_CAP,
            node_budget: crate::extremal::DEFAULT_NODE_BUDGET,
            parallel: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub id: String,
    pub verdict: Verdict,
    pub measured: String,
    pub expected: String,
    pub citation: String,
}

impl fmt::Display for CaseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
        };
        write!(
            f,
            "{tag:<12} {:<32} measured={} expected={}  [{}]",
            self.id, self.measured, self.expected, self.citation
        )
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub cases: Vec<CaseReport>,
}

impl VerifyReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.cases.iter().filter(|c| c.verdict == verdict).count()
    }

    pub fn all_passed(&self) -> bool {
        self.count(Verdict::Pass) == self.cases.len()
    }
}

fn execute(plan: &Plan, config: &RunConfig) -> (Verdict, String) {
    let fw_config = FwConfig {
        s_max: config.s_max,
        parallel: config.parallel,
    };
    let judge = |ok: bool| if ok { Verdict::Pass } else { Verdict::Fail };
    let ex_config = SearchConfig {
        node_budget: config.node_budget,
        parallel: config.parallel,
    };
    match plan {
        Plan::FwEquals(u, expected) => match fw_with(u, &fw_config) {
            FwOutcome::Width(s) => (judge(s == *expected), s.to_string()),
            FwOutcome::Exhausted(limit) => {
                (Verdict::Inconclusive, format!("exhausted at s={limit}"))
            }
        },
        Plan::FwGreater(u, bound) => match fw_witness(u, *bound) {
            Ok(Some(_)) => (Verdict::Pass, format!("avoider at s={bound}")),
            Ok(None) => (Verdict::Fail, format!("no avoider at s={bound}")),
            Err(e) => (Verdict::Inconclusive, e.to_string()),
        },
        Plan::WitnessPresent(u, s, expected) => match fw_witness(u, *s) {
            Ok(w) => (judge(w.is_some() == *expected), w.is_some().to_string()),
            Err(e) => (Verdict::Inconclusive, e.to_string()),
        },
        Plan::Metric { right, word, value } => {
            let v = if *right {
                r_metric(word)
            } else {
                l_metric(word)
            };
            (judge(v == *value), v.to_string())
        }
        Plan::Sandwich(spec) => {
            let bounds = binary_closed_forms(spec);
            let word = spec.realize();
            let (l, r) = (l_metric(&word), r_metric(&word));
            if l != bounds.l_value || r != bounds.r_value {
                return (
                    Verdict::Fail,
                    format!("greedy l={l} r={r} vs closed form {bounds:?}"),
                );
            }
            match fw_with(&word, &fw_config) {
                FwOutcome::Width(s) => (
                    judge(bounds.fw_lower <= s && s <= bounds.fw_upper),
                    format!("{} <= {s} <= {}", bounds.fw_lower, bounds.fw_upper),
                ),
                FwOutcome::Exhausted(limit) => {
                    (Verdict::Inconclusive, format!("fw exhausted at s={limit}"))
                }
            }
        }
        Plan::EsAvoider(r, s) => match build_es_avoider(*r, *s) {
            Ok(f) => {
                let ok = avoids_all_binary(&f.to_word(), *r, *s);
                (judge(ok), ok.to_string())
            }
            Err(e) => (Verdict::Inconclusive, e.to_string()),
        },
        Plan::AltAvoider(c, k) => match build_alt_avoider(*c, k - 1) {
            Ok(t) => {
                let ok = !formation_contains(&t, &alt(*c, *k));
                (judge(ok), ok.to_string())
            }
            Err(e) => (Verdict::Fail, e.to_string()),
        },
        Plan::TwoLetterAvoider(u) => match build_two_letter_avoider(u) {
            Ok(f) => {
                let ok = !formation_contains(&f.prefix(u.len() - 2), u);
                (judge(ok), ok.to_string())
            }
            Err(e) => (Verdict::Fail, e.to_string()),
        },
        Plan::ExEquals(q, expected) => match ex_search(q, &ex_config) {
            Ok(r) => (judge(r.max_length == *expected), r.max_length.to_string()),
            Err(e) => (Verdict::Inconclusive, e.to_string()),
        },
        Plan::Klazar { word, c, d, n } => match check_klazar_inequality(word, *c, *d, *n) {
            Ok(rep) => (
                judge(rep.holds()),
                format!(
                    "Ex_d={} Ex_c={} Ex_c(d-1)={}",
                    rep.ex_d, rep.ex_c, rep.ex_c_small
                ),
            ),
            Err(ExError::Query(e)) => (Verdict::Fail, e.to_string()),
            Err(e) => (Verdict::Inconclusive, e.to_string()),
        },
    }
}

/// Runs every case whose id matches `filter` (a glob), reporting in id order.
pub fn run_verify(
    registry: &[TheoremCase],
    filter: Option<&str>,
    config: &RunConfig,
) -> Result<VerifyReport> {
    let pattern = filter
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| Error::Parse {
            position: e.pos,
            message: e.msg.to_string(),
        })?;
    let selected: Vec<&TheoremCase> = registry
        .iter()
        .filter(|c| pattern.as_ref().is_none_or(|p| p.matches(&c.id)))
        .collect();
    let plans = selected
        .iter()
        .map(|c| c.plan(config).map(|p| (*c, p)))
        .collect::<Result<Vec<_>>>()?;

    let run = |(case, plan): &(&TheoremCase, Plan)| {
        let (verdict, measured) = execute(plan, config);
        CaseReport {
            id: case.id.clone(),
            verdict,
            measured,
            expected: case.expected.to_string(),
            citation: case.citation.clone(),
        }
    };
    let mut cases: Vec<CaseReport> = if config.parallel {
        plans.par_iter().map(run).collect()
    } else {
        plans.iter().map(run).collect()
    };
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(VerifyReport { cases })
}
