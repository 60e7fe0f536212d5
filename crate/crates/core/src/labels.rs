//! Shapes, coordinates, color assignments, the set-based labelling with
//! induced sets, label enumeration, and the label reductions used by the
//! recursion properties.

use num::complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge/coordinate color, 1-based: layer j admits colors 1..=j+1.
pub type Color = u8;

/// Discrete skeleton of a partition function: M layers, k_j auxiliary lines
/// per layer, left/right quantum-line counts per non-top layer, and the
/// top-layer length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shape {
    m: usize,
    k: Vec<usize>,
    li: Vec<usize>,
    lii: Vec<usize>,
    lm: usize,
}

impl Shape {
    pub fn new(k: Vec<usize>, li: Vec<usize>, lii: Vec<usize>, lm: usize) -> Result<Self> {
        let m = k.len();
        if m == 0 {
            return Err(Error::InvalidShape("need at least one layer".into()));
        }
        if li.len() != m - 1 || lii.len() != m - 1 {
            return Err(Error::InvalidShape(format!(
                "LI/LII must have length M-1 = {}, got {}/{}",
                m - 1,
                li.len(),
                lii.len()
            )));
        }
        if k.iter().any(|&kj| kj == 0) {
            return Err(Error::InvalidShape("every k_j must be >= 1".into()));
        }
        if lm == 0 {
            return Err(Error::InvalidShape("L_M must be >= 1".into()));
        }
        if k[m - 1] > lm {
            return Err(Error::InvalidShape(format!(
                "k_M = {} exceeds L_M = {}",
                k[m - 1],
                lm
            )));
        }
        for p in 0..m.saturating_sub(1) {
            let cap = li[p] + k[p + 1] + lii[p];
            if k[p] > cap {
                return Err(Error::InvalidShape(format!(
                    "k_{} = {} exceeds L_{}^I + k_{} + L_{}^II = {}",
                    p + 1,
                    k[p],
                    p + 1,
                    p + 2,
                    p + 1,
                    cap
                )));
            }
        }
        Ok(Self { m, k, li, lii, lm })
    }

    /// One-layer shape (no left/right blocks).
    pub fn single(k: usize, l: usize) -> Result<Self> {
        Self::new(vec![k], vec![], vec![], l)
    }

    pub fn layers(&self) -> usize {
        self.m
    }

    /// k_j, 1-based layer index.
    pub fn k(&self, layer: usize) -> usize {
        self.k[layer - 1]
    }

    pub fn k_list(&self) -> &[usize] {
        &self.k
    }

    /// L_j^I for layer j < M.
    pub fn li(&self, layer: usize) -> usize {
        self.li[layer - 1]
    }

    pub fn li_list(&self) -> &[usize] {
        &self.li
    }

    /// L_j^II for layer j < M.
    pub fn lii(&self, layer: usize) -> usize {
        self.lii[layer - 1]
    }

    pub fn lii_list(&self) -> &[usize] {
        &self.lii
    }

    pub fn lm(&self) -> usize {
        self.lm
    }

    /// Number of quantum lines crossed by layer p:
    /// L_p^I + k_{p+1} + L_p^II, or L_M for the top layer.
    pub fn row_len(&self, layer: usize) -> usize {
        if layer == self.m {
            self.lm
        } else {
            self.li[layer - 1] + self.k[layer] + self.lii[layer - 1]
        }
    }

    /// Total number of coordinates T.
    pub fn total_coords(&self) -> usize {
        self.li.iter().sum::<usize>() + self.lii.iter().sum::<usize>() + self.lm
    }

    /// Cumulative left offset L_1^I + .. + L_{p-1}^I (coordinates before the
    /// y_I block of layer p).
    pub fn li_cum(&self, layer: usize) -> usize {
        self.li[..layer - 1].iter().sum()
    }

    /// Pivot coordinate P = L_1^I + .. + L_{M-1}^I + L_M, the last top-layer
    /// coordinate; its color selects Case A vs Case B.
    pub fn pivot(&self) -> usize {
        self.li.iter().sum::<usize>() + self.lm
    }

    /// Global index of the i-th (1-based) y_I coordinate of layer p < M.
    pub fn yi_coord(&self, layer: usize, i: usize) -> usize {
        self.li_cum(layer) + i
    }

    /// Global index of the i-th (1-based) top-layer coordinate.
    pub fn top_coord(&self, i: usize) -> usize {
        self.li.iter().sum::<usize>() + i
    }

    /// Global index of the i-th (1-based) y_II coordinate of layer p < M.
    pub fn yii_coord(&self, layer: usize, i: usize) -> usize {
        let after: usize = self.lii[layer..self.m - 1].iter().sum();
        self.pivot() + after + i
    }

    /// Locate a 1-based coordinate index in the global ordering
    /// y_I^(1), .., y_I^(M-1), y^(M), y_II^(M-1), .., y_II^(1).
    pub fn layer_of(&self, index: usize) -> Result<Coordinate> {
        let t = self.total_coords();
        if index == 0 || index > t {
            return Err(Error::InvalidLabel(format!(
                "coordinate index {index} out of range 1..={t}"
            )));
        }
        let mut pos = index;
        for layer in 1..self.m {
            if pos <= self.li[layer - 1] {
                return Ok(Coordinate { index, layer, kind: CoordKind::YI, offset: pos });
            }
            pos -= self.li[layer - 1];
        }
        if pos <= self.lm {
            return Ok(Coordinate { index, layer: self.m, kind: CoordKind::Top, offset: pos });
        }
        pos -= self.lm;
        for layer in (1..self.m).rev() {
            if pos <= self.lii[layer - 1] {
                return Ok(Coordinate { index, layer, kind: CoordKind::YII, offset: pos });
            }
            pos -= self.lii[layer - 1];
        }
        unreachable!("index within total_coords must land in a block");
    }
}

/// Which block of a layer's quantum row a coordinate belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoordKind {
    YI,
    Top,
    YII,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coordinate {
    pub index: usize,
    pub layer: usize,
    pub kind: CoordKind,
    /// 1-based position within its block.
    pub offset: usize,
}

/// Naive labelling: output color at every coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorAssignment {
    colors: Vec<Color>,
}

impl ColorAssignment {
    /// Validates per-layer color bounds and |I^(j)| = k_j for every j.
    pub fn new(colors: Vec<Color>, shape: &Shape) -> Result<Self> {
        let t = shape.total_coords();
        if colors.len() != t {
            return Err(Error::InvalidLabel(format!(
                "expected {t} colors, got {}",
                colors.len()
            )));
        }
        for (idx0, &c) in colors.iter().enumerate() {
            let coord = shape.layer_of(idx0 + 1)?;
            if c == 0 || c as usize > coord.layer + 1 {
                return Err(Error::InvalidLabel(format!(
                    "coordinate {} (layer {}) cannot carry color {}",
                    idx0 + 1,
                    coord.layer,
                    c
                )));
            }
        }
        let out = Self { colors };
        for j in 1..=shape.layers() {
            let size = out.set_i(j, shape).len();
            if size != shape.k(j) {
                return Err(Error::InvalidLabel(format!(
                    "|I^({j})| = {size} but k_{j} = {}",
                    shape.k(j)
                )));
            }
        }
        Ok(out)
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    /// Color at a 1-based coordinate.
    pub fn color(&self, index: usize) -> Color {
        self.colors[index - 1]
    }

    /// I^(j): coordinates in layers >= j colored <= j, ascending.
    fn set_i(&self, j: usize, shape: &Shape) -> Vec<usize> {
        (1..=shape.total_coords())
            .filter(|&idx| {
                let coord = shape.layer_of(idx).expect("validated index");
                coord.layer >= j && (self.colors[idx - 1] as usize) <= j
            })
            .collect()
    }
}

/// Set-based labelling: I^(j) plus the induced sets.
///
/// The induced set stores ranks: Itilde^(j) holds the 1-based positions of
/// the elements of I^(j) within the ascending list of coordinates in layers
/// >= j colored <= j+1, so Itilde^(j) is a subset of
/// {1, .., k_{j+1} + L_j^I + L_j^II}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FmLabel {
    pub sets: Vec<Vec<usize>>,
    pub induced: Vec<Vec<usize>>,
}

impl FmLabel {
    pub fn set(&self, j: usize) -> &[usize] {
        &self.sets[j - 1]
    }

    pub fn induced(&self, j: usize) -> &[usize] {
        &self.induced[j - 1]
    }
}

/// Compute the set-based label from the naive colors.
pub fn fm_from_colors(colors: &ColorAssignment, shape: &Shape) -> Result<FmLabel> {
    let m = shape.layers();
    let mut sets = Vec::with_capacity(m);
    for j in 1..=m {
        let i_j = colors.set_i(j, shape);
        if i_j.len() != shape.k(j) {
            return Err(Error::InvalidLabel(format!(
                "|I^({j})| = {} but k_{j} = {}",
                i_j.len(),
                shape.k(j)
            )));
        }
        sets.push(i_j);
    }
    let mut induced = Vec::with_capacity(m.saturating_sub(1));
    for j in 1..m {
        // Coordinates in layers >= j that survive removal of colors j+2..M+1.
        let kept: Vec<usize> = (1..=shape.total_coords())
            .filter(|&idx| {
                let coord = shape.layer_of(idx).expect("validated index");
                coord.layer >= j && (colors.color(idx) as usize) <= j + 1
            })
            .collect();
        let expect = shape.k(j + 1) + shape.li(j) + shape.lii(j);
        debug_assert_eq!(kept.len(), expect);
        let ranks = sets[j - 1]
            .iter()
            .map(|&idx| {
                kept.iter()
                    .position(|&x| x == idx)
                    .map(|pos| pos + 1)
                    .ok_or_else(|| {
                        Error::InvalidLabel(format!("I^({j}) element {idx} missing from squeeze"))
                    })
            })
            .collect::<Result<Vec<usize>>>()?;
        induced.push(ranks);
    }
    Ok(FmLabel { sets, induced })
}

/// Reconstruct the naive colors: color(p) = min{ j : p in I^(j) }, with
/// layer(p)+1 for coordinates in no set.
pub fn colors_from_fm(label: &FmLabel, shape: &Shape) -> Result<ColorAssignment> {
    let m = shape.layers();
    if label.sets.len() != m {
        return Err(Error::InvalidLabel(format!(
            "expected {m} sets, got {}",
            label.sets.len()
        )));
    }
    // Nesting: I^(j) restricted to layers >= j+1 must lie inside I^(j+1).
    for j in 1..m {
        for &idx in &label.sets[j - 1] {
            let coord = shape.layer_of(idx)?;
            if coord.layer >= j + 1 && !label.sets[j].contains(&idx) {
                return Err(Error::InvalidLabel(format!(
                    "nesting violated: {idx} in I^({j}) but not in I^({})",
                    j + 1
                )));
            }
        }
    }
    let t = shape.total_coords();
    let mut colors = vec![0u8; t];
    for (idx0, color) in colors.iter_mut().enumerate() {
        let idx = idx0 + 1;
        let coord = shape.layer_of(idx)?;
        let min_j = (1..=m).find(|&j| label.sets[j - 1].contains(&idx));
        *color = match min_j {
            Some(j) => j as Color,
            None => (coord.layer + 1) as Color,
        };
    }
    ColorAssignment::new(colors, shape)
}

/// All valid color assignments of a shape, in lexicographic order.
pub fn enumerate_labels(shape: &Shape) -> Vec<ColorAssignment> {
    let t = shape.total_coords();
    let bounds: Vec<Color> = (1..=t)
        .map(|idx| (shape.layer_of(idx).expect("in range").layer + 1) as Color)
        .collect();
    let mut out = Vec::new();
    let mut current = vec![1u8; t];
    loop {
        if let Ok(assign) = ColorAssignment::new(current.clone(), shape) {
            out.push(assign);
        }
        // Increment the color tuple like a mixed-radix counter.
        let mut pos = t;
        loop {
            if pos == 0 {
                return out;
            }
            if current[pos - 1] < bounds[pos - 1] {
                current[pos - 1] += 1;
                break;
            }
            current[pos - 1] = 1;
            pos -= 1;
        }
    }
}

/// Case A reduction of the label: removes the pivot from I^(M), moves the
/// bottom auxiliary line of the top layer into the y_II block below
/// (for M >= 2), and shrinks (k_M, L_M) by one.
pub fn case_a_map(colors: &ColorAssignment, shape: &Shape) -> Result<(ColorAssignment, Shape)> {
    let m = shape.layers();
    let pivot = shape.pivot();
    let pivot_color = colors.color(pivot) as usize;
    if pivot_color == m + 1 {
        return Err(Error::Precondition("Case A requires pivot color != M+1".into()));
    }
    if shape.k(m) < 2 {
        return Err(Error::Precondition("Case A requires k_M >= 2".into()));
    }
    let mut k = shape.k_list().to_vec();
    k[m - 1] -= 1;
    if m == 1 {
        let new_shape = Shape::new(k, vec![], vec![], shape.lm() - 1)?;
        let mut new_colors = colors.colors().to_vec();
        new_colors.remove(pivot - 1);
        let assign = ColorAssignment::new(new_colors, &new_shape)?;
        return Ok((assign, new_shape));
    }
    let mut lii = shape.lii_list().to_vec();
    lii[m - 2] += 1;
    let new_shape = Shape::new(k, shape.li_list().to_vec(), lii, shape.lm() - 1)?;
    // Coordinate count is unchanged: the pivot becomes the first y_II^(M-1)
    // coordinate at the same global index, so the color vector carries over.
    let assign = ColorAssignment::new(colors.colors().to_vec(), &new_shape)?;
    Ok((assign, new_shape))
}

/// Case B reduction: deletes the pivot coordinate (colored M+1) and shrinks
/// L_M by one; indices above the pivot shift down.
pub fn case_b_map(colors: &ColorAssignment, shape: &Shape) -> Result<(ColorAssignment, Shape)> {
    let m = shape.layers();
    let pivot = shape.pivot();
    if (colors.color(pivot) as usize) != m + 1 {
        return Err(Error::Precondition("Case B requires pivot color == M+1".into()));
    }
    let new_shape = Shape::new(
        shape.k_list().to_vec(),
        shape.li_list().to_vec(),
        shape.lii_list().to_vec(),
        shape.lm() - 1,
    )?;
    let mut new_colors = colors.colors().to_vec();
    new_colors.remove(pivot - 1);
    let assign = ColorAssignment::new(new_colors, &new_shape)?;
    Ok((assign, new_shape))
}

/// Initial-condition reduction for k_M = 1: drops the top layer, the
/// remaining auxiliary line joining the (M-1)-th layer's quantum row.
pub fn initial_map(colors: &ColorAssignment, shape: &Shape) -> Result<(ColorAssignment, Shape)> {
    let m = shape.layers();
    if shape.k(m) != 1 {
        return Err(Error::Precondition("initial condition requires k_M = 1".into()));
    }
    if m < 2 {
        return Err(Error::Precondition("initial condition requires M >= 2".into()));
    }
    let pivot = shape.pivot();
    let pivot_color = colors.color(pivot) as usize;
    if pivot_color == m + 1 {
        return Err(Error::Precondition("initial condition requires pivot color != M+1".into()));
    }
    let k = shape.k_list()[..m - 1].to_vec();
    let li = shape.li_list()[..m - 2].to_vec();
    let lii = shape.lii_list()[..m - 2].to_vec();
    let new_lm = shape.li(m - 1) + 1 + shape.lii(m - 1);
    let new_shape = Shape::new(k, li, lii, new_lm)?;
    // The top block collapses to the single pivot coordinate; everything
    // above the block shifts down by L_M - 1.
    let first_top = shape.top_coord(1);
    let mut new_colors = Vec::with_capacity(new_shape.total_coords());
    new_colors.extend_from_slice(&colors.colors()[..first_top - 1]);
    new_colors.push(colors.color(pivot));
    new_colors.extend_from_slice(&colors.colors()[pivot..]);
    let assign = ColorAssignment::new(new_colors, &new_shape)?;
    Ok((assign, new_shape))
}

/// C^(p)(k, l): number of coordinates j <= kcut in layers p..M colored l.
pub fn count_c(p: usize, kcut: usize, l: Color, colors: &ColorAssignment, shape: &Shape) -> usize {
    (1..=kcut.min(shape.total_coords()))
        .filter(|&idx| {
            let coord = shape.layer_of(idx).expect("in range");
            coord.layer >= p && colors.color(idx) == l
        })
        .count()
}

/// lambda^[p] = lambda + gamma * sum over y_I coordinates of layers p..M-1
/// of the basis covector of their color.
pub fn lambda_shift(
    p: usize,
    colors: &ColorAssignment,
    lambda: &[Complex64],
    gamma: Complex64,
    shape: &Shape,
) -> Vec<Complex64> {
    let mut out = lambda.to_vec();
    for q in p..shape.layers() {
        for i in 1..=shape.li(q) {
            let idx = shape.yi_coord(q, i);
            let c = colors.color(idx) as usize;
            out[c - 1] += gamma;
        }
    }
    out
}
