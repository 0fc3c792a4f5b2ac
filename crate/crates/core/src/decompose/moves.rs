//! The three local rewrites of adjacent factors. Positions are 1-based:
//! a move at `j` rewrites the pair `(f_j, f_{j+1})`.

use serde::{Deserialize, Serialize};

use super::Decomposition;
use crate::error::{Error, Result};
use crate::poly::{AffineMap, GaussianRational, Poly};

#[allow(clippy::large_enum_variant)]
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RittMove {
    /// `(f_j, f_{j+1}) → (f_j∘A, A⁻¹∘f_{j+1})` with `A = a·z + b`.
    AffineShuffle { position: usize, a: GaussianRational, b: GaussianRational },
    /// `(T_m, T_n) → (T_n, T_m)`.
    ChebyshevSwap { position: usize },
    /// `(z^k, z^r·P(z^k)) → (z^r·P(z)^k, z^k)`.
    MonomialSwap { position: usize, k: usize, r: usize },
}

impl RittMove {
    pub fn position(&self) -> usize {
        match self {
            RittMove::AffineShuffle { position, .. }
            | RittMove::ChebyshevSwap { position }
            | RittMove::MonomialSwap { position, .. } => *position,
        }
    }
}

fn check_position(d: &Decomposition, j: usize) -> Result<()> {
    if j == 0 || j >= d.len() {
        return Err(Error::PositionOutOfRange { position: j, length: d.len() });
    }
    Ok(())
}

fn is_chebyshev(f: &Poly) -> bool {
    *f == Poly::chebyshev(f.degree())
}

/// `(r, P)` with `g = z^r·P(z^k)`.
fn monomial_split(g: &Poly, k: usize) -> Option<(usize, Poly)> {
    let r = g.valuation();
    g.shift_down(r).deflate(k).map(|p| (r, p))
}

/// Swaps detectable at `j`, followed by an identity `AffineShuffle` that
/// stands for the always-available shuffle (substitute any `A`).
pub fn available_moves(d: &Decomposition, j: usize) -> Result<Vec<RittMove>> {
    check_position(d, j)?;
    let (left, right) = (&d.factors[j - 1], &d.factors[j]);
    let mut out = Vec::new();
    if is_chebyshev(left) && is_chebyshev(right) {
        out.push(RittMove::ChebyshevSwap { position: j });
    }
    if let Some(k) = left.monomial_exponent() {
        if let Some((r, _)) = monomial_split(right, k) {
            out.push(RittMove::MonomialSwap { position: j, k, r });
        }
    }
    out.push(RittMove::AffineShuffle {
        position: j,
        a: GaussianRational::from_int(1),
        b: GaussianRational::from_int(0),
    });
    Ok(out)
}

pub fn apply_move(d: &Decomposition, m: &RittMove) -> Result<Decomposition> {
    let j = m.position();
    check_position(d, j)?;
    let (left, right) = (&d.factors[j - 1], &d.factors[j]);
    let (new_left, new_right) = match m {
        RittMove::ChebyshevSwap { .. } => {
            if !(is_chebyshev(left) && is_chebyshev(right)) {
                return Err(Error::InapplicableMove("factors are not both Chebyshev polynomials".into()));
            }
            (right.clone(), left.clone())
        }
        RittMove::MonomialSwap { k, r, .. } => {
            if left.monomial_exponent() != Some(*k) || *k < 2 {
                return Err(Error::InapplicableMove(format!("left factor is not z^{k}")));
            }
            let (found_r, p) = monomial_split(right, *k)
                .ok_or_else(|| Error::InapplicableMove(format!("right factor is not z^r·P(z^{k})")))?;
            if found_r != *r {
                return Err(Error::InapplicableMove(format!("right factor has valuation {found_r}, not {r}")));
            }
            let q = &Poly::monomial(GaussianRational::from_int(1), *r) * &p.pow(*k as u32);
            (q, left.clone())
        }
        RittMove::AffineShuffle { a, b, .. } => {
            let aff = AffineMap::new(a.clone(), b.clone())?;
            (aff.before(left), aff.inverse().after(right))
        }
    };
    let mut factors = d.factors.clone();
    factors[j - 1] = new_left;
    factors[j] = new_right;
    Decomposition::new(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn dec(f: &[Poly]) -> Decomposition {
        Decomposition::new(f.to_vec()).unwrap()
    }

    #[test]
    fn chebyshev_swap() {
        let d = dec(&[Poly::chebyshev(2), Poly::chebyshev(3)]);
        let moves = available_moves(&d, 1).unwrap();
        assert!(moves.contains(&RittMove::ChebyshevSwap { position: 1 }));
        let swapped = apply_move(&d, &RittMove::ChebyshevSwap { position: 1 }).unwrap();
        assert_eq!(swapped.factors(), &[Poly::chebyshev(3), Poly::chebyshev(2)]);
        let expected = p(&[-1, 0, 18, 0, -48, 0, 32]);
        assert_eq!(d.compose(), expected);
        assert_eq!(swapped.compose(), expected);
        assert!(available_moves(&swapped, 1).unwrap().contains(&RittMove::ChebyshevSwap { position: 1 }));
    }

    #[test]
    fn monomial_swap() {
        let d = dec(&[p(&[0, 0, 1]), p(&[0, 1, 0, 1])]);
        let moves = available_moves(&d, 1).unwrap();
        assert!(moves.contains(&RittMove::MonomialSwap { position: 1, k: 2, r: 1 }));
        let swapped = apply_move(&d, &RittMove::MonomialSwap { position: 1, k: 2, r: 1 }).unwrap();
        assert_eq!(swapped.factors(), &[p(&[0, 1, 2, 1]), p(&[0, 0, 1])]);
        assert_eq!(swapped.compose(), p(&[0, 0, 1, 0, 2, 0, 1]));
        assert_eq!(d.compose(), swapped.compose());
    }

    #[test]
    fn nothing_detected_for_shifted_squares() {
        let d = dec(&[p(&[1, 0, 1]), p(&[1, 0, 1])]);
        let moves = available_moves(&d, 1).unwrap();
        assert_eq!(moves.len(), 1);
        assert!(matches!(moves[0], RittMove::AffineShuffle { .. }));
        assert!(apply_move(&d, &RittMove::ChebyshevSwap { position: 1 }).is_err());
        assert!(apply_move(&d, &RittMove::MonomialSwap { position: 1, k: 2, r: 0 }).is_err());
    }

    #[test]
    fn affine_shuffle_preserves_composition() {
        let d = dec(&[p(&[3, 1, 1]), p(&[0, 2, 0, 1])]);
        let m = RittMove::AffineShuffle { position: 1, a: "2+i".parse().unwrap(), b: "-1/3".parse().unwrap() };
        let out = apply_move(&d, &m).unwrap();
        assert_eq!(out.compose(), d.compose());
        assert_ne!(out, d);
    }

    #[test]
    fn positions_are_checked() {
        let d = dec(&[p(&[0, 0, 1]), p(&[0, 0, 1])]);
        assert_eq!(available_moves(&d, 0).unwrap_err(), Error::PositionOutOfRange { position: 0, length: 2 });
        assert!(available_moves(&d, 2).is_err());
    }

    #[test]
    fn move_json_is_tagged() {
        let m: RittMove = serde_json::from_str(r#"{"kind":"monomial_swap","position":1,"k":2,"r":1}"#).unwrap();
        assert_eq!(m, RittMove::MonomialSwap { position: 1, k: 2, r: 1 });
        let s = serde_json::to_string(&RittMove::AffineShuffle {
            position: 2,
            a: GaussianRational::from_int(2),
            b: GaussianRational::from_int(0),
        })
        .unwrap();
        assert_eq!(s, r#"{"kind":"affine_shuffle","position":2,"a":"2/1","b":"0/1"}"#);
    }
}
