/// A subgroup of `ℤᵏ` given by generators, kept in row-echelon form.
///
/// Every echelon row remembers how it is built from the generators, so
/// membership comes with integer coefficients.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    gens: Vec<Vec<i128>>,
    rows: Vec<Row>,
}

#[derive(Clone, Debug)]
struct Row {
    v: Vec<i128>,
    coeffs: Vec<i128>,
}

fn pivot(v: &[i128]) -> Option<usize> {
    v.iter().position(|&x| x != 0)
}

/// `(g, x, y)` with `g = gcd(a, b) = x·a + y·b` and `g > 0`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1, mut x0, mut x1, mut y0, mut y1) = (a, b, 1, 0, 0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

fn combine(a: i128, r: &Row, b: i128, s: &Row) -> Row {
    Row {
        v: r.v.iter().zip(&s.v).map(|(x, y)| a * x + b * y).collect(),
        coeffs: r.coeffs.iter().zip(&s.coeffs).map(|(x, y)| a * x + b * y).collect(),
    }
}

impl Lattice {
    pub fn new(dim: usize, gens: &[Vec<i64>]) -> Lattice {
        let gens: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
        assert!(gens.iter().all(|g| g.len() == dim), "generator of the wrong length");
        let mut lattice = Lattice { dim, gens: Vec::new(), rows: Vec::new() };
        let m = gens.len();
        for (i, g) in gens.iter().enumerate() {
            let mut coeffs = vec![0; m];
            coeffs[i] = 1;
            lattice.insert(Row { v: g.clone(), coeffs });
        }
        lattice.gens = gens;
        lattice
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The echelon basis: leading entries positive, pivots strictly increasing.
    pub fn basis(&self) -> Vec<Vec<i128>> {
        self.rows.iter().map(|r| r.v.clone()).collect()
    }

    fn insert(&mut self, mut r: Row) {
        while let Some(p) = pivot(&r.v) {
            match self.rows.iter().position(|b| pivot(&b.v) >= Some(p)) {
                Some(i) if pivot(&self.rows[i].v) == Some(p) => {
                    let b = &self.rows[i];
                    let (bp, rp) = (b.v[p], r.v[p]);
                    let (g, x, y) = ext_gcd(bp, rp);
                    let merged = combine(x, b, y, &r);
                    r = combine(bp / g, &r, -(rp / g), b);
                    self.rows[i] = merged;
                }
                at => {
                    if r.v[p] < 0 {
                        r = combine(-1, &r, 0, &r);
                    }
                    self.rows.insert(at.unwrap_or(self.rows.len()), r);
                    return;
                }
            }
        }
    }

    /// Integer coefficients `kᵢ` with `Σ kᵢ·genᵢ = v`, or `None` when `v` is
    /// outside the lattice.
    pub fn solve(&self, v: &[i64]) -> Option<Vec<i128>> {
        assert_eq!(v.len(), self.dim, "vector of the wrong length");
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut coeffs = vec![0i128; self.gens.len()];
        for row in &self.rows {
            let p = pivot(&row.v).expect("echelon rows are nonzero");
            if rest[p] % row.v[p] != 0 {
                return None;
            }
            let q = rest[p] / row.v[p];
            for (x, y) in rest.iter_mut().zip(&row.v) {
                *x -= q * y;
            }
            for (c, d) in coeffs.iter_mut().zip(&row.coeffs) {
                *c += q * d;
            }
        }
        rest.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.solve(v).is_some()
    }
}
