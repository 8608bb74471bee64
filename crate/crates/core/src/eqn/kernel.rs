//! Exact solution spaces of variable-linear systems, restricted to
//! assignments whose components have degree `<= D`.
//!
//! Every equation must be affine in the variables: no bracket may have
//! variables on both sides. Coordinates are indexed variable-major over the
//! Hall monomials of degree `<= D`; the coefficient matrix is built by
//! evaluating the system on unit assignments and reduced exactly.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hall::{generate_basis, Monomial};
use crate::lie::{FreeLie, LieElement};
use crate::linalg::{solve_affine, span_basis, SparseVec};
use crate::scalar::{Field, Scalar};

use super::{evaluate, phi_system, Assignment, EquationSystem};

/// Coordinate space: `variables x (Hall monomials of degree <= degree)`.
#[derive(Clone, Debug)]
struct Ambient {
    field: Field,
    degree: u32,
    variables: Vec<String>,
    monomials: Arc<Vec<Monomial>>,
    index: Arc<HashMap<Monomial, usize>>,
}

impl Ambient {
    fn new(lie: &FreeLie, variables: Vec<String>, degree: u32) -> Result<Ambient> {
        let monomials = Arc::new(generate_basis(lie.rank(), degree)?);
        let index = Arc::new(monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect());
        Ok(Ambient {
            field: lie.field(),
            degree,
            variables,
            monomials,
            index,
        })
    }

    fn ncols(&self) -> usize {
        self.variables.len() * self.monomials.len()
    }

    fn column(&self, var: usize, mono: usize) -> usize {
        var * self.monomials.len() + mono
    }

    fn decode(&self, v: &SparseVec) -> Assignment {
        let nm = self.monomials.len();
        let mut out: Assignment = self
            .variables
            .iter()
            .map(|name| (name.clone(), LieElement::zero(self.field)))
            .collect();
        for (col, c) in v.entries() {
            let name = &self.variables[col / nm];
            let e = LieElement::monomial(self.monomials[col % nm].clone(), c.clone());
            let slot = out.get_mut(name).expect("declared variable");
            *slot = &*slot + &e;
        }
        out
    }

    fn encode(&self, sigma: &Assignment) -> Result<SparseVec> {
        for name in sigma.keys() {
            if !self.variables.contains(name) {
                return Err(Error::UnknownVariable(name.clone()));
            }
        }
        let mut entries = Vec::new();
        for (vi, name) in self.variables.iter().enumerate() {
            let Some(e) = sigma.get(name) else { continue };
            self.field.ensure(e.field())?;
            for (m, c) in e.terms() {
                let mi = *self.index.get(m).ok_or_else(|| Error::NotMember {
                    set: "truncation",
                    detail: format!("{name} has term {m} beyond degree {}", self.degree),
                })?;
                entries.push((self.column(vi, mi), c.clone()));
            }
        }
        SparseVec::from_entries(self.field, entries)
    }
}

/// An exact basis of a subspace of the truncated assignment space.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    ambient: Ambient,
    vectors: Vec<SparseVec>,
}

impl SubspaceBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn degree(&self) -> u32 {
        self.ambient.degree
    }

    pub fn variables(&self) -> &[String] {
        &self.ambient.variables
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.vectors
    }

    /// Basis vectors as assignments.
    pub fn assignments(&self) -> Vec<Assignment> {
        self.vectors.iter().map(|v| self.ambient.decode(v)).collect()
    }

    /// Coordinates of `sigma`; missing variables count as zero.
    pub fn coordinates(&self, sigma: &Assignment) -> Result<SparseVec> {
        self.ambient.encode(sigma)
    }

    pub fn contains(&self, sigma: &Assignment) -> Result<bool> {
        let v = self.ambient.encode(sigma)?;
        Ok(span_basis(self.ambient.field, self.vectors.iter().cloned()).contains(&v))
    }

    /// Coordinate projection onto `vars`, in the given order.
    pub fn project(&self, vars: &[&str]) -> Result<SubspaceBasis> {
        let mut positions = Vec::with_capacity(vars.len());
        for v in vars {
            let i = self
                .ambient
                .variables
                .iter()
                .position(|x| x == v)
                .ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
            positions.push(i);
        }
        let nm = self.ambient.monomials.len();
        let mut ambient = self.ambient.clone();
        ambient.variables = vars.iter().map(|s| s.to_string()).collect();
        let projected = self.vectors.iter().map(|v| {
            v.select(|col| {
                positions
                    .iter()
                    .position(|&p| p == col / nm)
                    .map(|new| new * nm + col % nm)
            })
        });
        let ech = span_basis(ambient.field, projected);
        Ok(SubspaceBasis {
            ambient,
            vectors: ech.rows().cloned().collect(),
        })
    }

    /// Whether both bases span the same subspace of the same ambient space.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        if self.ambient.variables != other.ambient.variables || self.ambient.degree != other.ambient.degree {
            return false;
        }
        let mine = span_basis(self.ambient.field, self.vectors.iter().cloned());
        let theirs = span_basis(self.ambient.field, other.vectors.iter().cloned());
        mine.rank() == theirs.rank() && other.vectors.iter().all(|v| mine.contains(v))
    }

    /// The span of `assignments` inside the same ambient space as `self`.
    pub fn span_of(&self, assignments: &[Assignment]) -> Result<SubspaceBasis> {
        let vecs = assignments
            .iter()
            .map(|s| self.ambient.encode(s))
            .collect::<Result<Vec<_>>>()?;
        let ech = span_basis(self.ambient.field, vecs);
        Ok(SubspaceBasis {
            ambient: self.ambient.clone(),
            vectors: ech.rows().cloned().collect(),
        })
    }
}

/// A particular solution plus the homogeneous solution space.
#[derive(Clone, Debug)]
pub struct AffineSet {
    pub particular: Assignment,
    pub kernel: SubspaceBasis,
}

struct Linearized {
    ambient: Ambient,
    rows: Vec<(SparseVec, Scalar)>,
}

fn linearize(lie: &FreeLie, system: &EquationSystem, degree: u32) -> Result<Linearized> {
    for eq in system.equations() {
        eq.lhs.variable_degree()?;
        eq.rhs.variable_degree()?;
    }
    let ambient = Ambient::new(lie, system.variables().to_vec(), degree)?;
    let field = lie.field();
    let zero_sigma: Assignment = system
        .variables()
        .iter()
        .map(|v| (v.clone(), lie.zero()))
        .collect();
    let residual = |sigma: &Assignment, i: usize| -> Result<LieElement> {
        let eq = &system.equations()[i];
        evaluate(lie, &eq.lhs, sigma)?.checked_sub(&evaluate(lie, &eq.rhs, sigma)?)
    };
    let neq = system.equations().len();
    let constants = (0..neq)
        .map(|i| residual(&zero_sigma, i))
        .collect::<Result<Vec<_>>>()?;
    let mentions: Vec<Vec<String>> = system
        .equations()
        .iter()
        .map(|eq| {
            let mut vs = eq.lhs.variables();
            vs.extend(eq.rhs.variables());
            vs
        })
        .collect();

    let mut row_of: HashMap<(usize, Monomial), usize> = HashMap::new();
    let mut row_entries: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut row_key = |key: (usize, Monomial), rows: &mut Vec<Vec<(usize, Scalar)>>| -> usize {
        *row_of.entry(key).or_insert_with(|| {
            rows.push(Vec::new());
            rows.len() - 1
        })
    };
    for (vi, name) in system.variables().iter().enumerate() {
        for (mi, m) in ambient.monomials.iter().enumerate() {
            let col = ambient.column(vi, mi);
            let mut sigma = zero_sigma.clone();
            sigma.insert(name.clone(), LieElement::monomial(m.clone(), Scalar::one(field)));
            for (ei, vars) in mentions.iter().enumerate() {
                if !vars.contains(name) {
                    continue;
                }
                let image = residual(&sigma, ei)?.checked_sub(&constants[ei])?;
                for (mm, c) in image.terms() {
                    let r = row_key((ei, mm.clone()), &mut row_entries);
                    row_entries[r].push((col, c.clone()));
                }
            }
        }
    }
    let mut rhs: Vec<Scalar> = vec![Scalar::zero(field); row_entries.len()];
    for (ei, k) in constants.iter().enumerate() {
        for (mm, c) in k.terms() {
            let r = row_key((ei, mm.clone()), &mut row_entries);
            if r >= rhs.len() {
                rhs.push(Scalar::zero(field));
            }
            rhs[r] = -c;
        }
    }
    let rows = row_entries
        .into_iter()
        .zip(rhs)
        .map(|(entries, b)| Ok((SparseVec::from_entries(field, entries)?, b)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Linearized { ambient, rows })
}

/// Basis of the solutions with all components of degree `<= degree`.
///
/// The system must be linear and homogeneous in its variables.
pub fn truncated_kernel(lie: &FreeLie, system: &EquationSystem, degree: u32) -> Result<SubspaceBasis> {
    let lin = linearize(lie, system, degree)?;
    if lin.rows.iter().any(|(_, b)| !b.is_zero()) {
        return Err(Error::Nonlinear(
            "system has variable-free terms; use truncated_solutions".into(),
        ));
    }
    let ncols = lin.ambient.ncols();
    let sol = solve_affine(lin.ambient.field, ncols, lin.rows).expect("homogeneous systems are consistent");
    Ok(SubspaceBasis {
        ambient: lin.ambient,
        vectors: sol.kernel,
    })
}

/// Solutions of an affine system with all components of degree `<= degree`;
/// `None` when there are none.
pub fn truncated_solutions(lie: &FreeLie, system: &EquationSystem, degree: u32) -> Result<Option<AffineSet>> {
    let lin = linearize(lie, system, degree)?;
    let ncols = lin.ambient.ncols();
    let Some(sol) = solve_affine(lin.ambient.field, ncols, lin.rows) else {
        return Ok(None);
    };
    Ok(Some(AffineSet {
        particular: lin.ambient.decode(&sol.particular),
        kernel: SubspaceBasis {
            ambient: lin.ambient,
            vectors: sol.kernel,
        },
    }))
}

/// Coordinate projection of `basis` onto `vars`.
pub fn project(basis: &SubspaceBasis, vars: &[&str]) -> Result<SubspaceBasis> {
    basis.project(vars)
}

/// Solves `phi` for `(z, z1, z2)` given `x` and `y`, by elimination at
/// truncation `degree`.
pub fn psi_auxiliaries_by_elimination(
    lie: &FreeLie,
    x: &LieElement,
    y: &LieElement,
    degree: u32,
) -> Result<Option<(LieElement, LieElement, LieElement)>> {
    let sigma: Assignment = [("x".to_string(), x.clone()), ("y".to_string(), y.clone())].into();
    let reduced = phi_system(lie)?.substitute(&sigma);
    Ok(truncated_solutions(lie, &reduced, degree)?.map(|s| {
        let get = |k: &str| s.particular[k].clone();
        (get("z"), get("z1"), get("z2"))
    }))
}
