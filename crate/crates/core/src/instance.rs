//! Instance files: `(A, Q, action, β)` with optional `π` and `c`, as JSON.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cochains::{Cochain, CochainError};
use crate::extension::{ExtensionError, ExtensionGroup};
use crate::groups::{AbElement, AbelianGroup, Action, DualCharacter, ExpMatrix, FiniteGroup, GroupError, RootExp};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error("table `{0}` has the wrong shape")]
    Shape(&'static str),
    #[error("root [{0}, {1}] has modulus 0")]
    Root(i64, u64),
    #[error("Q.order = {0} disagrees with the multiplication table")]
    Order(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cochain(#[from] CochainError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub order: usize,
    /// Row-major multiplication table; element 0 is the identity.
    pub table: Vec<Vec<usize>>,
}

/// The on-disk layout.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    /// Invariant factors of `A`.
    pub a: Vec<u64>,
    pub q: QuotientSpec,
    /// One matrix per element of `Q`; column `j` is the image of generator `j`.
    pub action: Vec<ExpMatrix>,
    /// `β(g₁, g₂)` as exponent vectors, indexed `[g₁][g₂]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Vec<Vec<Vec<i64>>>>,
    /// `π(g)` as exponent vectors of `Â`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi: Option<Vec<Vec<i64>>>,
    /// A 2-cochain on `G` as `[k, N]` pairs meaning `exp(2πik/N)`, indexed by
    /// element indices of `G` (`a + |A|·g`).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<Vec<(i64, u64)>>>,
}

/// A validated instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: Option<String>,
    pub a: AbelianGroup,
    pub q: FiniteGroup,
    pub action: Action,
    pub beta: Cochain<AbElement>,
    pub pi: Option<Cochain<DualCharacter>>,
    pub c: Option<Cochain<RootExp>>,
}

impl Instance {
    pub fn extension(&self) -> Result<ExtensionGroup, ExtensionError> {
        ExtensionGroup::build(&self.q, &self.action, &self.beta)
    }

    pub fn to_file(&self) -> InstanceFile {
        let nq = self.q.order();
        InstanceFile {
            schema_version: SCHEMA_VERSION,
            name: self.name.clone(),
            a: self.a.factors().to_vec(),
            q: QuotientSpec {
                order: nq,
                table: self.q.rows(),
            },
            action: self.action.matrices().to_vec(),
            beta: Some(
                (0..nq)
                    .map(|g| (0..nq).map(|h| to_i64(self.beta.at2(g, h).exponents())).collect())
                    .collect(),
            ),
            pi: self.pi.as_ref().map(|p| p.values().iter().map(|chi| to_i64(chi.exponents())).collect()),
            c: self.c.as_ref().map(|c| {
                let n = c.base();
                (0..n)
                    .map(|x| (0..n).map(|y| root_pair(*c.at2(x, y))).collect())
                    .collect()
            }),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance serializes")
    }
}

pub fn root_pair(r: RootExp) -> (i64, u64) {
    (r.numerator() as i64, r.ambient())
}

pub fn root_from_pair((k, n): (i64, u64)) -> Result<RootExp, InstanceError> {
    if n == 0 {
        return Err(InstanceError::Root(k, n));
    }
    Ok(RootExp::new(k, n))
}

fn to_i64(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

impl InstanceFile {
    pub fn load(path: &Path) -> Result<Self, InstanceError> {
        let text = std::fs::read_to_string(path).map_err(|source| InstanceError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Self, InstanceError> {
        let file: InstanceFile = serde_json::from_str(text)?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(InstanceError::Schema(file.schema_version));
        }
        Ok(file)
    }

    /// Validates every table; `β` defaults to trivial.
    pub fn validate(&self) -> Result<Instance, InstanceError> {
        let a = AbelianGroup::new(self.a.clone())?;
        if self.q.table.len() != self.q.order {
            return Err(InstanceError::Order(self.q.order));
        }
        let q = FiniteGroup::from_table(self.q.table.clone())?;
        let action = Action::new(&q, a.clone(), self.action.clone())?;
        let nq = q.order();
        let beta = match &self.beta {
            None => Cochain::constant(2, nq, a.identity()),
            Some(rows) => {
                if rows.len() != nq || rows.iter().any(|r| r.len() != nq) {
                    return Err(InstanceError::Shape("beta"));
                }
                let mut values = Vec::with_capacity(nq * nq);
                for row in rows {
                    for e in row {
                        values.push(a.element(e)?);
                    }
                }
                Cochain::from_values(2, nq, values)?
            }
        };
        let pi = match &self.pi {
            None => None,
            Some(rows) => {
                if rows.len() != nq {
                    return Err(InstanceError::Shape("pi"));
                }
                let values = rows.iter().map(|e| a.character(e)).collect::<Result<Vec<_>, _>>()?;
                Some(Cochain::from_values(1, nq, values)?)
            }
        };
        let c = match &self.c {
            None => None,
            Some(rows) => {
                let n = a.order() * nq;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(InstanceError::Shape("c"));
                }
                let raw = rows.iter().flatten().map(|&p| root_from_pair(p)).collect::<Result<Vec<_>, _>>()?;
                let m = raw.iter().fold(1u64, |m, r| num_integer::lcm(m, r.ambient()));
                Some(Cochain::from_values(2, n, raw.into_iter().map(|r| r.lift(m)).collect())?)
            }
        };
        Ok(Instance {
            name: self.name.clone(),
            a,
            q,
            action,
            beta,
            pi,
            c,
        })
    }
}
