//! The structure-constant file format.
//!
//! A JSON object with one field per line and one sparse entry per line:
//!
//! ```text
//! {
//! "field": {"conductor": 1},
//! "dim": 2,
//! "basis": ["1","g"],
//! "comul": [
//!   [0,0,0,"1"],
//!   [1,1,1,"1"]
//! ],
//! "counit": ["1","1"]
//! }
//! ```
//!
//! `comul` entries `[i, j, k, c]` mean `Δ b_i ∋ c b_j ⊗ b_k`; `mul` entries mean
//! `b_i b_j ∋ c b_k`. `antipode[i][j]` is the `b_i`-coordinate of `S(b_j)`. Scalars are
//! strings in the syntax of [`Scalar`]'s `FromStr`.

use serde::{Deserialize, Serialize};

use crate::coalgebra::{AlgebraSC, Coalgebra};
use crate::error::{Error, Result};
use crate::exactmath::linalg::Vector;
use crate::exactmath::Scalar;
use crate::hopf::HopfAlgebra;
use crate::zoo::Built;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Field {
    pub conductor: u32,
}

pub type Entry = (usize, usize, usize, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub field: Field,
    pub dim: usize,
    pub basis: Vec<String>,
    pub comul: Vec<Entry>,
    pub counit: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mul: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antipode: Option<Vec<Vec<String>>>,
}

fn sparse(t: &[Vec<Vector>]) -> Vec<Entry> {
    let mut out = Vec::new();
    for (i, plane) in t.iter().enumerate() {
        for (j, row) in plane.iter().enumerate() {
            for (k, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out.push((i, j, k, x.to_string()));
                }
            }
        }
    }
    out
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_string).collect()
}

impl StructureFile {
    pub fn from_coalgebra(c: &Coalgebra) -> Self {
        StructureFile {
            field: Field { conductor: c.conductor() },
            dim: c.dim(),
            basis: c.basis_names().to_vec(),
            comul: sparse(c.comul()),
            counit: strings(c.counit()),
            mul: None,
            unit: None,
            antipode: None,
        }
    }

    /// Includes the antipode when it is known or can be solved for.
    pub fn from_hopf(h: &HopfAlgebra) -> Self {
        let mut f = StructureFile::from_coalgebra(&h.coalgebra);
        f.field.conductor = h.conductor();
        f.mul = Some(sparse(h.algebra.mul()));
        f.unit = Some(strings(h.unit()));
        f.antipode = h.s().ok().map(|s| s.iter().map(|r| strings(r)).collect());
        f
    }

    pub fn from_built(b: &Built) -> Self {
        match b {
            Built::Coalgebra(c) => StructureFile::from_coalgebra(c),
            Built::Hopf(h) => StructureFile::from_hopf(h),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("{\n");
        let mut fields = vec![
            format!("\"field\": {}", json(&self.field)),
            format!("\"dim\": {}", self.dim),
            format!("\"basis\": {}", json(&self.basis)),
            format!("\"comul\": {}", entries(&self.comul)),
            format!("\"counit\": {}", json(&self.counit)),
        ];
        if let Some(m) = &self.mul {
            fields.push(format!("\"mul\": {}", entries(m)));
        }
        if let Some(u) = &self.unit {
            fields.push(format!("\"unit\": {}", json(u)));
        }
        if let Some(s) = &self.antipode {
            let rows: Vec<String> = s.iter().map(|r| format!("  {}", json(r))).collect();
            fields.push(format!("\"antipode\": [\n{}\n]", rows.join(",\n")));
        }
        out.push_str(&fields.join(",\n"));
        out.push_str("\n}\n");
        out
    }

    /// Builds the coalgebra, or the Hopf algebra when `mul` is present. A supplied
    /// antipode is verified.
    pub fn build(&self) -> Result<Built> {
        let n = self.dim;
        let c = self.field.conductor;
        if c == 0 {
            return Err(Error::Parse("field.conductor: must be positive".into()));
        }
        if self.basis.len() != n {
            return Err(Error::Parse(format!("basis: {} names for dim {n}", self.basis.len())));
        }
        let comul = tensor("comul", &self.comul, n)?;
        let counit = vector("counit", &self.counit, n)?;
        let coalgebra = Coalgebra::new(self.basis.clone(), comul, counit, c)?;
        let Some(mul) = &self.mul else {
            if self.unit.is_some() || self.antipode.is_some() {
                return Err(Error::Parse("unit/antipode given without mul".into()));
            }
            return Ok(Built::Coalgebra(coalgebra));
        };
        let unit = self.unit.as_ref().ok_or_else(|| Error::Parse("mul given without unit".into()))?;
        let algebra = AlgebraSC::new(tensor("mul", mul, n)?, vector("unit", unit, n)?, c)?;
        let h = HopfAlgebra::new(coalgebra, algebra)?;
        match &self.antipode {
            None => Ok(Built::Hopf(h)),
            Some(rows) => {
                if rows.len() != n {
                    return Err(Error::Parse(format!("antipode: {} rows for dim {n}", rows.len())));
                }
                let s = rows
                    .iter()
                    .enumerate()
                    .map(|(i, r)| vector(&format!("antipode[{i}]"), r, n))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Built::Hopf(h.with_antipode(s)?))
            }
        }
    }
}

fn entries(es: &[Entry]) -> String {
    if es.is_empty() {
        return "[]".into();
    }
    let lines: Vec<String> =
        es.iter().map(|e| format!("  {}", json(e))).collect();
    format!("[\n{}\n]", lines.join(",\n"))
}

fn json<T: Serialize + ?Sized>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn scalar(field: &str, s: &str) -> Result<Scalar> {
    s.parse::<Scalar>().map_err(|e| Error::Parse(format!("{field}: {e}")))
}

fn vector(field: &str, v: &[String], n: usize) -> Result<Vector> {
    if v.len() != n {
        return Err(Error::Parse(format!("{field}: length {} for dim {n}", v.len())));
    }
    v.iter().enumerate().map(|(i, s)| scalar(&format!("{field}[{i}]"), s)).collect()
}

fn tensor(field: &str, es: &[Entry], n: usize) -> Result<Vec<Vec<Vector>>> {
    let mut t = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (idx, (i, j, k, s)) in es.iter().enumerate() {
        let at = format!("{field}[{idx}]");
        if *i >= n || *j >= n || *k >= n {
            return Err(Error::Parse(format!("{at}: index out of range for dim {n}")));
        }
        let x = scalar(&at, s)?;
        t[*i][*j][*k] = &t[*i][*j][*k] + &x;
    }
    Ok(t)
}
