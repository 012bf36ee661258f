use rayon::prelude::*;
use serde::Serialize;

use super::{apply_map, AlgElement, AlgebraMap, GenSymbol, Presentation};
use crate::scalar::{CycScalar, Rational};

#[derive(Clone, Debug, Serialize)]
pub struct JacobiFailure {
    pub triple: [String; 3],
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobiReport {
    pub presentation: String,
    pub index_bound: Rational,
    pub triples_checked: usize,
    pub skew_pairs_checked: usize,
    pub failures: Vec<JacobiFailure>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn sign(x: &GenSymbol, y: &GenSymbol) -> CycScalar {
    CycScalar::from_int(if x.is_odd() && y.is_odd() { -1 } else { 1 })
}

/// Graded Jacobi identity
/// [x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]
/// and super-skew symmetry for all generators with |index| ≤ bound.
pub fn jacobi_check(pres: &Presentation, index_bound: &Rational) -> JacobiReport {
    let gens = pres.generators(index_bound);
    let el: Vec<AlgElement> = gens.iter().cloned().map(AlgElement::from_symbol).collect();
    let mut failures: Vec<JacobiFailure> = (0..gens.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut local = Vec::new();
            for b in 0..gens.len() {
                let xy = pres.bracket(&el[a], &el[b]).unwrap();
                let yx = pres.bracket(&el[b], &el[a]).unwrap();
                let skew = xy.plus(&yx.scaled(&sign(&gens[a], &gens[b])));
                if !skew.is_zero() {
                    local.push(JacobiFailure {
                        triple: [gens[a].to_string(), gens[b].to_string(), "skew".into()],
                        residual: skew.to_string(),
                    });
                }
                for c in 0..gens.len() {
                    let yz = pres.bracket(&el[b], &el[c]).unwrap();
                    let xz = pres.bracket(&el[a], &el[c]).unwrap();
                    let lhs = pres.bracket(&el[a], &yz).unwrap();
                    let t1 = pres.bracket(&xy, &el[c]).unwrap();
                    let t2 = pres.bracket(&el[b], &xz).unwrap().scaled(&sign(&gens[a], &gens[b]));
                    let res = lhs.minus(&t1).minus(&t2);
                    if !res.is_zero() {
                        local.push(JacobiFailure {
                            triple: [gens[a].to_string(), gens[b].to_string(), gens[c].to_string()],
                            residual: res.to_string(),
                        });
                    }
                }
            }
            local
        })
        .collect();
    failures.sort_by(|x, y| x.triple.cmp(&y.triple));
    let n = gens.len();
    JacobiReport {
        presentation: pres.to_string(),
        index_bound: index_bound.clone(),
        triples_checked: n * n * n,
        skew_pairs_checked: n * n,
        failures,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismFailure {
    pub pair: [String; 2],
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub map: String,
    pub source: String,
    pub target: String,
    pub index_bound: Rational,
    pub pairs_checked: usize,
    pub failures: Vec<HomomorphismFailure>,
}

impl HomomorphismReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// map([x, y]_src) = [map x, map y]_dst for all source generators within bound.
pub fn homomorphism_check(
    map: &AlgebraMap,
    src: &Presentation,
    dst: &Presentation,
    index_bound: &Rational,
) -> HomomorphismReport {
    let gens = src.generators(index_bound);
    let mut failures = Vec::new();
    for x in &gens {
        for y in &gens {
            let ex = AlgElement::from_symbol(x.clone());
            let ey = AlgElement::from_symbol(y.clone());
            let outcome = (|| {
                let lhs = apply_map(map, &src.bracket(&ex, &ey)?)?;
                let rhs = dst.bracket(&apply_map(map, &ex)?, &apply_map(map, &ey)?)?;
                Ok::<_, crate::Error>((lhs, rhs))
            })();
            match outcome {
                Ok((lhs, rhs)) if lhs == rhs => {}
                Ok((lhs, rhs)) => failures.push(HomomorphismFailure {
                    pair: [x.to_string(), y.to_string()],
                    detail: format!("map of bracket = {lhs}, bracket of maps = {rhs}"),
                }),
                Err(e) => failures.push(HomomorphismFailure {
                    pair: [x.to_string(), y.to_string()],
                    detail: e.to_string(),
                }),
            }
        }
    }
    HomomorphismReport {
        map: map.to_string(),
        source: src.to_string(),
        target: dst.to_string(),
        index_bound: index_bound.clone(),
        pairs_checked: gens.len() * gens.len(),
        failures,
    }
}
