//! Warping functions and their action on SRSFs.
//!
//! A [`Warp`] is a nondecreasing piecewise-linear self-map of [0,1] with
//! pinned endpoints. Plateaus are allowed (the semigroup Γ); a warp with
//! strictly increasing values is flagged as a member of the group Γ₀.
//!
//! Every operation that pulls a function back through a warp first refines
//! the warp's grid with the preimages of the function's breakpoints. On the
//! refined grid the composition is exactly piecewise-linear (or
//! piecewise-constant for cell functions), so norm and distance preservation
//! hold as cell-sum identities rather than approximations.

use crate::error::{Error, Result};
use crate::fnspace::{CellFunction, Grid, SampledFunction};
use crate::srsf::Srsf;

#[derive(Debug, Clone, PartialEq)]
pub struct Warp {
    gamma: SampledFunction,
    strict: bool,
}

impl Warp {
    /// Validates `gamma` and infers Γ₀ membership from strict increase.
    pub fn new(gamma: SampledFunction) -> Result<Self> {
        validate(&gamma)?;
        let strict = is_strictly_increasing(gamma.values());
        Ok(Self { gamma, strict })
    }

    /// Validates `gamma` together with an explicit Γ₀ claim.
    pub fn with_claim(gamma: SampledFunction, strict: bool) -> Result<Self> {
        validate(&gamma)?;
        if strict && !is_strictly_increasing(gamma.values()) {
            return Err(Error::InvalidWarp(
                "claimed strictly increasing but has a plateau".into(),
            ));
        }
        Ok(Self { gamma, strict })
    }

    pub fn from_nodes(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        Self::new(SampledFunction::new(Grid::new(nodes)?, values)?)
    }

    pub fn gamma(&self) -> &SampledFunction {
        &self.gamma
    }

    pub fn grid(&self) -> &Grid {
        self.gamma.grid()
    }

    pub fn values(&self) -> &[f64] {
        self.gamma.values()
    }

    /// Γ₀ membership.
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.gamma.eval(t)
    }

    /// Cell slopes γ̇.
    pub fn slopes(&self) -> CellFunction {
        crate::fnspace::derivative(&self.gamma)
    }

    /// Maximum pointwise deviation from the identity over `grid` nodes and
    /// this warp's own nodes.
    pub fn sup_distance_to_identity(&self) -> f64 {
        self.grid()
            .nodes()
            .iter()
            .zip(self.values())
            .map(|(t, v)| (t - v).abs())
            .fold(0.0, f64::max)
    }
}

fn validate(gamma: &SampledFunction) -> Result<()> {
    let v = gamma.values();
    if v[0] != 0.0 || v[v.len() - 1] != 1.0 {
        return Err(Error::InvalidWarp(format!(
            "endpoints must map to 0 and 1, got {} and {}",
            v[0],
            v[v.len() - 1]
        )));
    }
    if let Some(i) = v.windows(2).position(|w| w[1] < w[0]) {
        return Err(Error::InvalidWarp(format!("decreasing at node {}", i + 1)));
    }
    if v.iter().any(|&x| !(0.0..=1.0).contains(&x)) {
        return Err(Error::InvalidWarp("values leave [0,1]".into()));
    }
    Ok(())
}

fn is_strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

pub fn identity_warp(grid: &Grid) -> Warp {
    let gamma =
        SampledFunction::new(grid.clone(), grid.nodes().to_vec()).expect("grid nodes are finite");
    Warp {
        gamma,
        strict: true,
    }
}

/// A warp's grid refined by the preimages of a set of breakpoints.
///
/// `images[k]` is γ at `nodes[k]`; at inserted preimages it is the
/// breakpoint itself, bit for bit. `slopes[k]` is the secant slope of γ
/// over refined cell `k`, so `slopes[k]·Δtₖ` reproduces the image width
/// and mass is conserved cell by cell.
#[derive(Debug, Clone)]
pub(crate) struct Refinement {
    pub nodes: Vec<f64>,
    pub images: Vec<f64>,
    pub slopes: Vec<f64>,
}

impl Refinement {
    /// `breaks` must be strictly increasing; values outside (0,1) are
    /// ignored.
    pub fn new(g: &Warp, breaks: &[f64]) -> Self {
        let t = g.grid().nodes();
        let v = g.values();
        let mut nodes = Vec::with_capacity(t.len() + breaks.len());
        let mut images = Vec::with_capacity(t.len() + breaks.len());
        nodes.push(t[0]);
        images.push(v[0]);
        let mut b = 0;
        for j in 0..t.len() - 1 {
            let (ta, tb, ga, gb) = (t[j], t[j + 1], v[j], v[j + 1]);
            while b < breaks.len() && breaks[b] <= ga {
                b += 1;
            }
            while b < breaks.len() && breaks[b] < gb {
                let s = breaks[b];
                let tp = ta + (s - ga) / (gb - ga) * (tb - ta);
                if tp > *nodes.last().unwrap() && tp < tb {
                    nodes.push(tp);
                    images.push(s);
                }
                b += 1;
            }
            nodes.push(tb);
            images.push(gb);
        }
        let slopes = (0..nodes.len() - 1)
            .map(|k| (images[k + 1] - images[k]) / (nodes[k + 1] - nodes[k]))
            .collect();
        Self {
            nodes,
            images,
            slopes,
        }
    }

    pub fn grid(&self) -> Grid {
        Grid::from_sorted_unchecked(self.nodes.clone())
    }

    pub fn image_midpoint(&self, cell: usize) -> f64 {
        0.5 * (self.images[cell] + self.images[cell + 1])
    }

    /// Cell values of `(q∘γ)·√γ̇`.
    pub fn act(&self, q: &CellFunction) -> Vec<f64> {
        (0..self.slopes.len())
            .map(|k| {
                let s = self.slopes[k];
                if s == 0.0 {
                    0.0
                } else {
                    q.eval(self.image_midpoint(k)) * s.sqrt()
                }
            })
            .collect()
    }

    /// Cell values of `(d∘γ)·γ̇`, the chain rule for a cell derivative `d`.
    pub fn chain(&self, d: &CellFunction) -> Vec<f64> {
        (0..self.slopes.len())
            .map(|k| {
                let s = self.slopes[k];
                if s == 0.0 {
                    0.0
                } else {
                    d.eval(self.image_midpoint(k)) * s
                }
            })
            .collect()
    }
}

fn interior(grid: &Grid) -> &[f64] {
    let n = grid.nodes();
    &n[1..n.len() - 1]
}

/// `f∘γ` as an exact piecewise-linear function on the refined grid.
pub fn compose_function(f: &SampledFunction, g: &Warp) -> SampledFunction {
    let r = Refinement::new(g, interior(f.grid()));
    let values = r.images.iter().map(|&s| f.eval(s)).collect();
    SampledFunction::new(r.grid(), values).expect("composition of finite functions is finite")
}

/// The derivative of `f∘γ`, computed by the chain rule cell by cell.
pub fn warped_derivative(f: &SampledFunction, g: &Warp) -> CellFunction {
    let r = Refinement::new(g, interior(f.grid()));
    let d = crate::fnspace::derivative(f);
    CellFunction::new(r.grid(), r.chain(&d)).expect("finite")
}

/// `γ₁∘γ₂`. The result lives on γ₂'s grid refined by the γ₂-preimages of
/// γ₁'s nodes, where the composition is exactly piecewise-linear.
pub fn compose(g1: &Warp, g2: &Warp) -> Warp {
    let f = compose_function(&g1.gamma, g2);
    let strict = g1.strict && g2.strict && is_strictly_increasing(f.values());
    Warp::with_claim(f, strict).expect("composition of warps is a warp")
}

/// Graph reflection of a strictly increasing warp.
pub fn invert(g: &Warp) -> Result<Warp> {
    if !g.strict {
        return Err(Error::NotInvertible);
    }
    let grid = Grid::new(g.values().to_vec())?;
    let gamma = SampledFunction::new(grid, g.grid().nodes().to_vec())?;
    Warp::with_claim(gamma, true)
}

/// The group action `(q, γ) = (q∘γ)·√γ̇`.
pub fn action(q: &Srsf, g: &Warp) -> Srsf {
    let r = Refinement::new(g, interior(q.q().grid()));
    let cells = r.act(q.q());
    Srsf::new(CellFunction::new(r.grid(), cells).expect("finite"))
}

/// L² residuals of the two action identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraReport {
    /// `‖((q,γ₁),γ₂) − (q,γ₁∘γ₂)‖₂`
    pub composition: f64,
    /// `‖((q,γ₁),γ₁⁻¹) − q‖₂`
    pub inverse: f64,
}

pub fn action_algebra_check(q: &Srsf, g1: &Warp, g2: &Warp) -> Result<AlgebraReport> {
    let once = action(q, g1);
    let twice = action(&once, g2);
    let direct = action(q, &compose(g1, g2));
    let composition = twice.q().l2_distance(direct.q())?;
    let back = action(&once, &invert(g1)?);
    let inverse = back.q().l2_distance(q.q())?;
    Ok(AlgebraReport {
        composition,
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fnspace::{l2_norm, CellFunction};

    fn warp(nodes: &[f64], values: &[f64]) -> Warp {
        Warp::from_nodes(nodes.to_vec(), values.to_vec()).unwrap()
    }

    fn dense(n: usize, f: impl Fn(f64) -> f64) -> Warp {
        let grid = Grid::uniform(n).unwrap();
        let mut vals: Vec<f64> = grid.nodes().iter().map(|&t| f(t)).collect();
        vals[0] = 0.0;
        vals[n - 1] = 1.0;
        Warp::new(SampledFunction::new(grid, vals).unwrap()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(Warp::from_nodes(vec![0.0, 1.0], vec![0.0, 0.9]).is_err());
        assert!(Warp::from_nodes(vec![0.0, 0.5, 1.0], vec![0.0, 0.6, 0.5]).is_err());
        let plateau = warp(&[0.0, 0.5, 1.0], &[0.0, 0.0, 1.0]);
        assert!(!plateau.is_strict());
        assert!(Warp::with_claim(plateau.gamma().clone(), true).is_err());
    }

    #[test]
    fn identity_examples() {
        let id = identity_warp(&Grid::uniform(3).unwrap());
        assert_eq!(id.values(), &[0.0, 0.5, 1.0]);
        assert!(id.is_strict());
        let q = Srsf::new(
            CellFunction::new(Grid::new(vec![0.0, 0.3, 1.0]).unwrap(), vec![2.0, -1.0]).unwrap(),
        );
        let same = action(&q, &identity_warp(q.q().grid()));
        assert_eq!(same.q().cells(), q.q().cells());
    }

    #[test]
    fn compose_with_identity() {
        let g = warp(&[0.0, 0.3, 0.8, 1.0], &[0.0, 0.1, 0.7, 1.0]);
        let left = compose(&identity_warp(&Grid::uniform(5).unwrap()), &g);
        for (&t, &v) in g.grid().nodes().iter().zip(g.values()) {
            assert_eq!(left.eval(t), v);
        }
        let right = compose(&g, &identity_warp(g.grid()));
        assert_eq!(right, g);
    }

    #[test]
    fn compose_inverse_pair_is_near_identity() {
        let n = 513;
        let sq = dense(n, |t| t * t);
        let rt = dense(n, f64::sqrt);
        let c = compose(&sq, &rt);
        assert!(c.is_strict());
        assert!(c.sup_distance_to_identity() <= 2.0 / n as f64);
    }

    #[test]
    fn invert_examples() {
        let g = warp(&[0.0, 0.5, 1.0], &[0.0, 0.25, 1.0]);
        let inv = invert(&g).unwrap();
        assert_eq!(inv.grid().nodes(), &[0.0, 0.25, 1.0]);
        assert_eq!(inv.values(), &[0.0, 0.5, 1.0]);
        assert_eq!(invert(&inv).unwrap(), g);
        let id = identity_warp(&Grid::uniform(4).unwrap());
        assert_eq!(invert(&id).unwrap(), id);
        let flat = warp(&[0.0, 0.5, 1.0], &[0.0, 0.0, 1.0]);
        assert_eq!(invert(&flat), Err(Error::NotInvertible));
    }

    #[test]
    fn invert_then_compose_is_identity_within_cell_width() {
        let g = dense(257, |t| (t + t * t * t) / 2.0);
        let c = compose(&g, &invert(&g).unwrap());
        assert!(c.sup_distance_to_identity() <= g.grid().max_width());
    }

    #[test]
    fn action_of_unit_srsf_integrates_slope() {
        let g = warp(&[0.0, 0.2, 0.6, 1.0], &[0.0, 0.5, 0.55, 1.0]);
        let one = Srsf::new(CellFunction::constant(Grid::uniform(2).unwrap(), 1.0).unwrap());
        let a = action(&one, &g);
        let slopes = g.slopes();
        for (i, &c) in a.q().cells().iter().enumerate() {
            assert!((c - slopes.cells()[i].sqrt()).abs() < 1e-15);
        }
        assert!((a.norm() - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn action_on_square_warp_matches_analytic_composition() {
        // secant slope of t² on [a,b] is a + b, twice the cell midpoint
        let g = dense(401, |t| t * t);
        let minus = Srsf::new(CellFunction::constant(Grid::uniform(2).unwrap(), -1.0).unwrap());
        let a = action(&minus, &g);
        let grid = a.q().grid();
        // the secant slope loses about ε/h to cancellation in b² − a²
        let tol = 4.0 * f64::EPSILON * 400.0;
        for i in 0..grid.num_cells() {
            let expect = -(2.0 * grid.midpoint(i)).sqrt();
            assert!((a.q().cells()[i] - expect).abs() < tol);
        }
    }

    #[test]
    fn plateau_cells_map_to_zero() {
        let g = warp(&[0.0, 0.25, 0.5, 1.0], &[0.0, 0.5, 0.5, 1.0]);
        let q = Srsf::new(CellFunction::constant(Grid::uniform(2).unwrap(), 3.0).unwrap());
        let a = action(&q, &g);
        assert_eq!(a.q().cells()[1], 0.0);
        // Γ \ Γ₀ still preserves the norm
        assert!((a.norm() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn norm_preserved_exactly_on_matching_grid() {
        let g = warp(&[0.0, 0.1, 0.45, 0.7, 1.0], &[0.0, 0.3, 0.4, 0.9, 1.0]);
        let qgrid = Grid::new(g.values().to_vec()).unwrap();
        let q = Srsf::new(CellFunction::new(qgrid, vec![1.5, -0.25, 2.0, 0.75]).unwrap());
        let a = action(&q, &g);
        assert!((a.norm() - q.norm()).abs() <= 8.0 * f64::EPSILON * q.norm());
        assert!((l2_norm(a.q()) - a.norm()).abs() == 0.0);
    }

    #[test]
    fn algebra_identities_hold() {
        let g1 = dense(129, |t| t.powf(1.5));
        let g2 = dense(97, |t| (-2.0 * t).exp_m1() / (-2f64).exp_m1());
        let q = Srsf::new(
            CellFunction::from_midpoints(Grid::uniform(64).unwrap(), |t| (5.0 * t).cos()).unwrap(),
        );
        let r = action_algebra_check(&q, &g1, &g2).unwrap();
        assert!(r.composition < 1e-6, "{r:?}");
        assert!(r.inverse < 1e-6, "{r:?}");
        let id = identity_warp(&Grid::uniform(5).unwrap());
        let r = action_algebra_check(&q, &id, &id).unwrap();
        assert_eq!(r.composition, 0.0);
        assert_eq!(r.inverse, 0.0);
    }
}
