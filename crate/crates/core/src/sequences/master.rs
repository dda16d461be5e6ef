use super::{GRType, Recurrence, SeqView};
use crate::arith::text::TableLayout;
use crate::arith::{Int, ZPoly};
use crate::error::SeqError;

/// Variable layout of the symbolic rings: coefficient symbols `a1..`, then
/// the seed `x0..x_{n-1}`, then optionally a second seed `y0..y_{n-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: usize,
    pub n_alpha: usize,
    pub with_y: bool,
}

impl Layout {
    pub fn somos(n: usize, with_y: bool) -> Self {
        Layout { n, n_alpha: n / 2, with_y }
    }

    pub fn gale_robinson(t: GRType, with_y: bool) -> Self {
        Layout { n: t.order(), n_alpha: 3, with_y }
    }

    pub fn nvars(&self) -> usize {
        self.n_alpha + self.n * if self.with_y { 2 } else { 1 }
    }

    /// Variable index of `a_j`, `j >= 1`.
    pub fn alpha(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.n_alpha);
        j - 1
    }

    pub fn x(&self, i: usize) -> usize {
        assert!(i < self.n);
        self.n_alpha + i
    }

    pub fn y(&self, i: usize) -> usize {
        assert!(self.with_y && i < self.n);
        self.n_alpha + self.n + i
    }

    pub fn x_range(&self) -> std::ops::Range<usize> {
        self.n_alpha..self.n_alpha + self.n
    }

    pub fn y_range(&self) -> std::ops::Range<usize> {
        self.n_alpha + self.n..self.n_alpha + 2 * self.n
    }

    pub fn alpha_var(&self, j: usize) -> ZPoly {
        ZPoly::var(self.nvars(), self.alpha(j), &Int::ZERO)
    }

    pub fn x_var(&self, i: usize) -> ZPoly {
        ZPoly::var(self.nvars(), self.x(i), &Int::ZERO)
    }

    pub fn y_var(&self, i: usize) -> ZPoly {
        ZPoly::var(self.nvars(), self.y(i), &Int::ZERO)
    }

    pub fn names(&self) -> Vec<String> {
        let mut v: Vec<String> = (1..=self.n_alpha).map(|j| format!("a{j}")).collect();
        v.extend((0..self.n).map(|i| format!("x{i}")));
        if self.with_y {
            v.extend((0..self.n).map(|i| format!("y{i}")));
        }
        v
    }

    /// Variable permutation exchanging the two seeds.
    pub fn swap_xy(&self) -> Vec<usize> {
        let mut m: Vec<usize> = (0..self.nvars()).collect();
        if self.with_y {
            for i in 0..self.n {
                m[self.x(i)] = self.y(i);
                m[self.y(i)] = self.x(i);
            }
        }
        m
    }

    /// Product of the seed variables `x0 ... x_{n-1}`.
    pub fn pi_x(&self) -> ZPoly {
        (0..self.n).fold(ZPoly::one(self.nvars(), &Int::ZERO), |acc, i| acc.mul_poly(&self.x_var(i)))
    }

    /// Table layout with the `a_j` as coefficient symbols and the seed
    /// variables as exponent positions.
    pub fn table_layout(&self) -> TableLayout {
        let mut slots: Vec<usize> = self.x_range().collect();
        if self.with_y {
            slots.extend(self.y_range());
        }
        TableLayout { nvars: self.nvars(), alpha: (0..self.n_alpha).collect(), slots }
    }

    pub fn pi_y(&self) -> ZPoly {
        (0..self.n).fold(ZPoly::one(self.nvars(), &Int::ZERO), |acc, i| acc.mul_poly(&self.y_var(i)))
    }
}

/// Master sequence whose seed is `x_{seed_vars[i]}` and whose coefficient
/// symbols are the layout's `a_j`.
pub fn master_sequence_in(layout: Layout, gr: Option<GRType>, seed_on_y: bool) -> Result<SeqView<ZPoly>, SeqError> {
    let coeffs: Vec<ZPoly> = (1..=layout.n_alpha).map(|j| layout.alpha_var(j)).collect();
    let rec = match gr {
        Some(t) => Recurrence::gale_robinson(t, coeffs)?,
        None => Recurrence::somos(layout.n, coeffs)?,
    };
    let seed = (0..layout.n).map(|i| if seed_on_y { layout.y_var(i) } else { layout.x_var(i) }).collect();
    SeqView::new(rec, seed, 0)
}

/// Order-`n` master Somos sequence over `Z[a][x^{+-1}]`.
pub fn master_sequence(n: usize) -> Result<SeqView<ZPoly>, SeqError> {
    master_sequence_in(Layout::somos(n, false), None, false)
}

pub fn master_gale_robinson(t: GRType) -> Result<SeqView<ZPoly>, SeqError> {
    master_sequence_in(Layout::gale_robinson(t, false), Some(t), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Mono;

    #[test]
    fn first_steps_of_order_six() {
        let l = Layout::somos(6, false);
        let mut s = master_sequence(6).unwrap();
        s.extend_to(-1, 6);
        let num = l
            .alpha_var(1)
            .mul_poly(&l.x_var(1).mul_poly(&l.x_var(5)))
            .add_poly(&l.alpha_var(2).mul_poly(&l.x_var(2).mul_poly(&l.x_var(4))))
            .add_poly(&l.alpha_var(3).mul_poly(&l.x_var(3).square()));
        assert_eq!(s.get(6).unwrap().mul_poly(&l.x_var(0)), num);
        assert_eq!(s.get(6).unwrap().min_mono().unwrap().negative_part(), Mono::var(l.x(0), 1));
        let back = l
            .alpha_var(1)
            .mul_poly(&l.x_var(0).mul_poly(&l.x_var(4)))
            .add_poly(&l.alpha_var(2).mul_poly(&l.x_var(1).mul_poly(&l.x_var(3))))
            .add_poly(&l.alpha_var(3).mul_poly(&l.x_var(2).square()));
        assert_eq!(s.get(-1).unwrap().mul_poly(&l.x_var(5)), back);
        assert!(s.residuals_vanish());
    }
}
