//! The JSON document every command prints, plus its text rendering.

use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer written as a bare JSON number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl From<BigInt> for Int {
    fn from(v: BigInt) -> Self {
        Int(v)
    }
}

impl From<&BigInt> for Int {
    fn from(v: &BigInt) -> Self {
        Int(v.clone())
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        Int(BigInt::from(v))
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int(BigInt::from(v))
    }
}

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n =
            serde_json::Number::from_str(&self.0.to_string()).map_err(serde::ser::Error::custom)?;
        n.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&n.to_string())
            .map(Int)
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RingDesc {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub moduli: Option<Vec<Int>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dim: Option<usize>,
}

impl RingDesc {
    pub fn zd(dim: usize) -> Self {
        RingDesc {
            kind: "zd".into(),
            moduli: None,
            dim: Some(dim),
        }
    }

    pub fn product(moduli: &[u64]) -> Self {
        RingDesc {
            kind: "product".into(),
            moduli: Some(moduli.iter().map(|&n| Int::from(n)).collect()),
            dim: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub diagonal: Vec<Int>,
    pub unimodular: Vec<Vec<Int>>,
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub subgroups: Int,
    pub ideals: Int,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: Int,
    pub den: Int,
}

/// One line of the `verify` sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub ring: String,
    pub formula: Counts,
    pub census: Counts,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub ring: RingDesc,
    pub generators: Vec<Vec<Int>>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub order: Option<Int>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counts: Option<Counts>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probability: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub report: Option<Vec<VerifyRow>>,
    pub oracle_checked: bool,
    pub elapsed_ms: f64,
}

impl CommandResult {
    pub fn new(command: String, ring: RingDesc, verdict: &str) -> Self {
        CommandResult {
            command,
            ring,
            generators: Vec::new(),
            verdict: verdict.into(),
            reason: None,
            witness: None,
            order: None,
            counts: None,
            probability: None,
            report: None,
            oracle_checked: false,
            elapsed_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let ring = match (&self.ring.moduli, self.ring.dim) {
            (Some(m), _) => {
                let parts: Vec<String> = m.iter().map(|n| format!("Z_{}", n.0)).collect();
                parts.join(" x ")
            }
            (None, Some(d)) => format!("Z^{d}"),
            _ => "?".into(),
        };
        let _ = writeln!(s, "command:   {}", self.command);
        let _ = writeln!(s, "ring:      {ring}");
        if !self.generators.is_empty() {
            let gens: Vec<String> = self
                .generators
                .iter()
                .map(|g| {
                    let xs: Vec<String> = g.iter().map(|x| x.0.to_string()).collect();
                    format!("({})", xs.join(","))
                })
                .collect();
            let _ = writeln!(s, "generators: {}", gens.join(" "));
        }
        let _ = writeln!(s, "verdict:   {}", self.verdict);
        if let Some(r) = &self.reason {
            let _ = writeln!(s, "reason:    {r}");
        }
        if let Some(w) = &self.witness {
            let diag: Vec<String> = w.diagonal.iter().map(|x| x.0.to_string()).collect();
            let _ = writeln!(s, "diagonal:  {}", diag.join(", "));
            let rows: Vec<String> = w
                .unimodular
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.0.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                })
                .collect();
            let _ = writeln!(s, "unimodular: [{}]", rows.join("; "));
            let _ = writeln!(s, "support:   {:?}", w.support);
        }
        if let Some(o) = &self.order {
            let _ = writeln!(s, "order:     {}", o.0);
        }
        if let Some(c) = &self.counts {
            let _ = writeln!(s, "subgroups: {}", c.subgroups.0);
            let _ = writeln!(s, "ideals:    {}", c.ideals.0);
        }
        if let Some(p) = &self.probability {
            let _ = writeln!(s, "probability: {}/{}", p.num.0, p.den.0);
        }
        if let Some(rows) = &self.report {
            let _ = writeln!(
                s,
                "{:<22} {:>10} {:>10} {:>8} {:>8}  ok",
                "ring", "subgroups", "census", "ideals", "census"
            );
            for r in rows {
                let _ = writeln!(
                    s,
                    "{:<22} {:>10} {:>10} {:>8} {:>8}  {}",
                    r.ring,
                    r.formula.subgroups.0,
                    r.census.subgroups.0,
                    r.formula.ideals.0,
                    r.census.ideals.0,
                    if r.agree { "yes" } else { "NO" }
                );
            }
        }
        let _ = writeln!(s, "oracle_checked: {}", self.oracle_checked);
        let _ = writeln!(s, "elapsed_ms: {:.3}", self.elapsed_ms);
        s
    }
}
