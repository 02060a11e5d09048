use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    #[serde(rename = "wellsep-cube")]
    WellSepCube,
    #[serde(rename = "wellsep-ball")]
    WellSepBall,
    SrCube,
    SrBall,
    ClumpCube,
    ClumpBall,
    HyperCube,
    HyperBall,
}

impl Theorem {
    pub const ALL: [Theorem; 8] = [
        Theorem::WellSepCube,
        Theorem::WellSepBall,
        Theorem::SrCube,
        Theorem::SrBall,
        Theorem::ClumpCube,
        Theorem::ClumpBall,
        Theorem::HyperCube,
        Theorem::HyperBall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::WellSepCube => "wellsep-cube",
            Theorem::WellSepBall => "wellsep-ball",
            Theorem::SrCube => "sr-cube",
            Theorem::SrBall => "sr-ball",
            Theorem::ClumpCube => "clump-cube",
            Theorem::ClumpBall => "clump-ball",
            Theorem::HyperCube => "hyper-cube",
            Theorem::HyperBall => "hyper-ball",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Theorem::ALL.into_iter().find(|t| t.name() == s)
    }

    pub fn is_ball(self) -> bool {
        matches!(
            self,
            Theorem::WellSepBall | Theorem::SrBall | Theorem::ClumpBall | Theorem::HyperBall
        )
    }
}

/// Which operator a bound is evaluated for: the matrix over `Ω ∩ Z^d` or the
/// operator over all of `Ω`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    Continuous,
    Discrete,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub required: String,
    pub actual: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: Theorem,
    pub operator: OperatorKind,
    pub applicable: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub lower: f64,
    pub upper: Option<f64>,
    pub constants: BTreeMap<String, f64>,
}

impl BoundReport {
    pub(crate) fn new(theorem: Theorem, operator: OperatorKind) -> Self {
        BoundReport {
            theorem,
            operator,
            applicable: false,
            hypotheses: Vec::new(),
            lower: 0.0,
            upper: None,
            constants: BTreeMap::new(),
        }
    }

    pub(crate) fn check(&mut self, name: &str, required: String, actual: f64, pass: bool) -> bool {
        self.hypotheses.push(Hypothesis { name: name.into(), required, actual, pass });
        pass
    }

    pub(crate) fn constant(&mut self, name: &str, v: f64) {
        self.constants.insert(name.into(), v);
    }

    pub fn all_pass(&self) -> bool {
        self.hypotheses.iter().all(|h| h.pass)
    }

    /// Sets the bound if every hypothesis holds, otherwise records 0.
    pub(crate) fn finish(
        mut self,
        lower: impl FnOnce(&mut Self) -> crate::Result<f64>,
    ) -> crate::Result<Self> {
        self.applicable = self.all_pass();
        if self.applicable {
            self.lower = lower(&mut self)?.max(0.0);
        } else {
            self.lower = 0.0;
            self.upper = None;
        }
        Ok(self)
    }

    pub fn failed(&self) -> Vec<&str> {
        self.hypotheses.iter().filter(|h| !h.pass).map(|h| h.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn csv_header(theorem: Theorem) -> String {
        format!("{0}_applicable,{0}_lower", theorem.name())
    }

    pub fn csv_fields(&self) -> String {
        format!("{},{:.17e}", self.applicable, self.lower)
    }
}
