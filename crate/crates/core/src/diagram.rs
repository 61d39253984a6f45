//! Newton diagrams in canonical form.
//!
//! A diagram is stored as a translation `shift = (a, b)` (the quadrant of the
//! monomial `x^a y^b`) plus the compact part, a list of elementary segments
//! `{L\M}` with strictly increasing inclination `L/M`. The semi-infinite
//! elementary diagrams `{a\∞} = Δ(x^a)` and `{∞\b} = Δ(y^b)` are exactly the
//! translations, so they are folded into `shift` on construction and expanded
//! again by [`NewtonDiagram::canonical_decomposition`].

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

use num_rational::Ratio;
use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::BiPoly;

/// Length or height of an elementary segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Extent {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(v) => write!(f, "{v}"),
            Extent::Infinite => write!(f, "∞"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(v) => s.serialize_u64(*v),
            Extent::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct ExtentVisitor;
        impl Visitor<'_> for ExtentVisitor {
            type Value = Extent;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Extent, E> {
                Ok(Extent::Finite(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Extent, E> {
                u64::try_from(v)
                    .map(Extent::Finite)
                    .map_err(|_| E::custom("negative extent"))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Extent, E> {
                if v == "inf" {
                    Ok(Extent::Infinite)
                } else {
                    Err(E::custom(format!("unexpected extent {v:?}")))
                }
            }
        }
        d.deserialize_any(ExtentVisitor)
    }
}

/// Inclination `L/M` of an elementary diagram, with `L/∞ = 0` and `∞/M = +∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Inclination {
    Finite(Ratio<u64>),
    Infinite,
}

impl Inclination {
    pub fn from_integer(v: u64) -> Self {
        Inclination::Finite(Ratio::from_integer(v))
    }

    pub fn ratio(n: u64, d: u64) -> Self {
        Inclination::Finite(Ratio::new(n, d))
    }

    pub fn as_ratio(&self) -> Option<Ratio<u64>> {
        match self {
            Inclination::Finite(r) => Some(*r),
            Inclination::Infinite => None,
        }
    }
}

impl Ord for Inclination {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Inclination::Finite(a), Inclination::Finite(b)) => a.cmp(b),
            (Inclination::Finite(_), Inclination::Infinite) => Ordering::Less,
            (Inclination::Infinite, Inclination::Finite(_)) => Ordering::Greater,
            (Inclination::Infinite, Inclination::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Inclination {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Inclination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inclination::Finite(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            Inclination::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Inclination::Infinite => write!(f, "inf"),
        }
    }
}

/// The elementary Newton diagram `{L\M} = Δ(x^L + y^M)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElementarySegment {
    pub length: Extent,
    pub height: Extent,
}

impl ElementarySegment {
    /// A compact segment `{L\M}`; both sides must be positive.
    pub fn new(length: u64, height: u64) -> Result<Self> {
        Self::with_extents(Extent::Finite(length), Extent::Finite(height))
    }

    pub fn with_extents(length: Extent, height: Extent) -> Result<Self> {
        match (length, height) {
            (Extent::Infinite, Extent::Infinite) => Err(Error::Json(
                "elementary segment cannot be infinite in both directions".into(),
            )),
            (Extent::Finite(0), _) | (_, Extent::Finite(0)) => Err(Error::Json(
                "elementary segment sides must be positive".into(),
            )),
            _ => Ok(ElementarySegment { length, height }),
        }
    }

    pub(crate) fn compact(length: u64, height: u64) -> Self {
        debug_assert!(length > 0 && height > 0);
        ElementarySegment {
            length: Extent::Finite(length),
            height: Extent::Finite(height),
        }
    }

    pub fn inclination(&self) -> Inclination {
        match (self.length, self.height) {
            (Extent::Finite(l), Extent::Finite(m)) => Inclination::ratio(l, m),
            (Extent::Finite(_), Extent::Infinite) => Inclination::from_integer(0),
            (Extent::Infinite, _) => Inclination::Infinite,
        }
    }

    /// `(L, M)` for a compact segment.
    pub fn sides(&self) -> Option<(u64, u64)> {
        match (self.length, self.height) {
            (Extent::Finite(l), Extent::Finite(m)) => Some((l, m)),
            _ => None,
        }
    }

    fn sides_unchecked(&self) -> (u64, u64) {
        self.sides().expect("compact segment")
    }
}

impl fmt::Display for ElementarySegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}\\{}}}", self.length, self.height)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NewtonDiagram {
    shift: (u64, u64),
    segments: Vec<ElementarySegment>,
}

impl NewtonDiagram {
    /// The quadrant `(a, b) + R²₊`, i.e. `Δ(x^a y^b)`. `point(0, 0)` is the
    /// neutral element of the Minkowski sum.
    pub fn point(a: u64, b: u64) -> Self {
        NewtonDiagram {
            shift: (a, b),
            segments: Vec::new(),
        }
    }

    /// Sum of elementary diagrams, normalized to canonical form.
    pub fn from_segments<I>(segments: I) -> Self
    where
        I: IntoIterator<Item = ElementarySegment>,
    {
        Self::with_shift((0, 0), segments)
    }

    /// `x^a y^b`-translate of a sum of elementary diagrams.
    pub fn with_shift<I>(shift: (u64, u64), segments: I) -> Self
    where
        I: IntoIterator<Item = ElementarySegment>,
    {
        let mut shift = shift;
        let mut compact = Vec::new();
        for s in segments {
            match (s.length, s.height) {
                (Extent::Finite(l), Extent::Infinite) => shift.0 += l,
                (Extent::Infinite, Extent::Finite(m)) => shift.1 += m,
                (Extent::Finite(l), Extent::Finite(m)) => compact.push((l, m)),
                (Extent::Infinite, Extent::Infinite) => {
                    unreachable!("rejected by ElementarySegment constructors")
                }
            }
        }
        NewtonDiagram {
            shift,
            segments: merge_by_inclination(compact),
        }
    }

    /// Convenience constructor from compact `(L, M)` pairs.
    pub fn from_pairs(pairs: &[(u64, u64)]) -> Result<Self> {
        let segs = pairs
            .iter()
            .map(|&(l, m)| ElementarySegment::new(l, m))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_segments(segs))
    }

    /// Newton diagram of a finite support: the lower-left boundary of
    /// `conv(points + R²₊)`, cut into maximal segments (collinear lattice
    /// steps are merged).
    pub fn from_support(points: &[(u64, u64)]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySupport);
        }
        let min_i = points.iter().map(|p| p.0).min().unwrap();
        let min_j = points.iter().map(|p| p.1).min().unwrap();
        // lowest point of every column
        let mut cols: Vec<(u64, u64)> = Vec::new();
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        for (i, j) in sorted {
            match cols.last() {
                Some(&(li, _)) if li == i => {}
                _ => cols.push((i, j)),
            }
        }
        // Andrew's monotone chain, lower hull, stopping at the first lowest point
        let mut hull: Vec<(u64, u64)> = Vec::new();
        for &pt in &cols {
            if hull.last().is_some_and(|&(_, j)| j == min_j) {
                break;
            }
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(a, b, pt) <= 0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| ElementarySegment::compact(w[1].0 - w[0].0, w[0].1 - w[1].1))
            .collect();
        Ok(NewtonDiagram {
            shift: (min_i, min_j),
            segments,
        })
    }

    pub fn shift(&self) -> (u64, u64) {
        self.shift
    }

    /// Compact elementary segments, in increasing inclination.
    pub fn segments(&self) -> &[ElementarySegment] {
        &self.segments
    }

    pub fn is_point(&self) -> bool {
        self.segments.is_empty()
    }

    /// The unique representation as a sum of elementary diagrams with strictly
    /// increasing inclinations, including the semi-infinite `{a\∞}` and `{∞\b}`
    /// parts coming from the translation.
    pub fn canonical_decomposition(&self) -> Vec<ElementarySegment> {
        let mut out = Vec::with_capacity(self.segments.len() + 2);
        if self.shift.0 > 0 {
            out.push(ElementarySegment {
                length: Extent::Finite(self.shift.0),
                height: Extent::Infinite,
            });
        }
        out.extend_from_slice(&self.segments);
        if self.shift.1 > 0 {
            out.push(ElementarySegment {
                length: Extent::Infinite,
                height: Extent::Finite(self.shift.1),
            });
        }
        out
    }

    pub fn inclinations(&self) -> Vec<Inclination> {
        self.segments.iter().map(|s| s.inclination()).collect()
    }

    pub fn total_length(&self) -> u64 {
        self.segments.iter().map(|s| s.sides_unchecked().0).sum()
    }

    pub fn total_height(&self) -> u64 {
        self.segments.iter().map(|s| s.sides_unchecked().1).sum()
    }

    /// Vertex chain from the top-left corner to the bottom-right corner.
    pub fn vertices(&self) -> Vec<(u64, u64)> {
        let mut v = Vec::with_capacity(self.segments.len() + 1);
        let (mut x, mut y) = (self.shift.0, self.shift.1 + self.total_height());
        v.push((x, y));
        for s in &self.segments {
            let (l, m) = s.sides_unchecked();
            x += l;
            y -= m;
            v.push((x, y));
        }
        v
    }

    pub fn minkowski_sum(&self, other: &NewtonDiagram) -> NewtonDiagram {
        let pairs = self
            .segments
            .iter()
            .chain(&other.segments)
            .map(|s| s.sides_unchecked())
            .collect();
        NewtonDiagram {
            shift: (self.shift.0 + other.shift.0, self.shift.1 + other.shift.1),
            segments: merge_by_inclination(pairs),
        }
    }

    /// Formal difference `self − other`, per inclination class: every segment
    /// of `other` must be matched by a segment of `self` with the same
    /// inclination and sides no smaller. This is deliberately partial; it is
    /// not a general Minkowski decomposition.
    pub fn difference(&self, other: &NewtonDiagram) -> Result<NewtonDiagram> {
        let not_representable = |msg: String| Error::DifferenceNotRepresentable(msg);
        if other.shift.0 > self.shift.0 || other.shift.1 > self.shift.1 {
            return Err(not_representable(format!(
                "translation {:?} exceeds {:?}",
                other.shift, self.shift
            )));
        }
        let mut remaining: Vec<(u64, u64)> =
            self.segments.iter().map(|s| s.sides_unchecked()).collect();
        for seg in &other.segments {
            let incl = seg.inclination();
            let (l, m) = seg.sides_unchecked();
            let slot = remaining
                .iter_mut()
                .find(|(a, b)| *b > 0 && Inclination::ratio(*a, *b) == incl)
                .ok_or_else(|| not_representable(format!("no segment of inclination {incl}")))?;
            if slot.0 < l {
                return Err(not_representable(format!(
                    "{seg} is larger than the matching segment {{{}\\{}}}",
                    slot.0, slot.1
                )));
            }
            slot.0 -= l;
            slot.1 -= m;
        }
        remaining.retain(|&(l, _)| l > 0);
        Ok(NewtonDiagram {
            shift: (self.shift.0 - other.shift.0, self.shift.1 - other.shift.1),
            segments: remaining
                .into_iter()
                .map(|(l, m)| ElementarySegment::compact(l, m))
                .collect(),
        })
    }

    /// `{L\M} + ...` notation, including the semi-infinite parts.
    pub fn notation(&self) -> String {
        let parts: Vec<String> = self
            .canonical_decomposition()
            .iter()
            .map(ToString::to_string)
            .collect();
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("diagram serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        NewtonDiagram::deserialize(v).map_err(|e| Error::Json(e.to_string()))
    }

    pub fn render(&self, format: RenderFormat) -> String {
        match format {
            RenderFormat::Ascii => self.render_ascii(),
            RenderFormat::Svg => self.render_svg(),
        }
    }

    /// Staircase drawing on a character grid. `o` marks vertices, `.` the
    /// compact edges, `|` and `-` the two unbounded rays.
    pub fn render_ascii(&self) -> String {
        const MAX_W: u64 = 64;
        const MAX_H: u64 = 24;
        let verts = self.vertices();
        let (x_end, y_top) = (verts.last().unwrap().0, verts[0].1);
        let sx = (x_end + 2).div_ceil(MAX_W).max(1);
        let sy = (y_top + 2).div_ceil(MAX_H).max(1);
        let w = (x_end / sx + 3) as usize;
        let h = (y_top / sy + 3) as usize;
        let mut grid = vec![vec![' '; w]; h];
        let cell = |x: f64, y: f64| -> (usize, usize) {
            let c = (x / sx as f64).round() as usize;
            let r = (y / sy as f64).round() as usize;
            (c.min(w - 1), r.min(h - 1))
        };
        // axes
        for row in grid.iter_mut() {
            row[0] = ':';
        }
        for c in grid[0].iter_mut() {
            *c = '.';
        }
        grid[0][0] = '+';
        for pair in verts.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            let steps = 4 * (b.0 - a.0).max(a.1 - b.1).max(1);
            for k in 0..=steps {
                let t = k as f64 / steps as f64;
                let x = a.0 as f64 + t * (b.0 as f64 - a.0 as f64);
                let y = a.1 as f64 + t * (b.1 as f64 - a.1 as f64);
                let (c, r) = cell(x, y);
                grid[r][c] = '*';
            }
        }
        let (c0, r0) = cell(verts[0].0 as f64, verts[0].1 as f64);
        for row in grid.iter_mut().skip(r0 + 1) {
            row[c0] = '|';
        }
        let (c1, r1) = cell(x_end as f64, verts.last().unwrap().1 as f64);
        for c in grid[r1].iter_mut().skip(c1 + 1) {
            *c = '-';
        }
        for &(x, y) in &verts {
            let (c, r) = cell(x as f64, y as f64);
            grid[r][c] = 'o';
        }
        let mut out = String::new();
        let _ = writeln!(out, "N = {}", self.notation());
        let chain: Vec<String> = verts.iter().map(|(x, y)| format!("({x},{y})")).collect();
        let _ = writeln!(out, "vertices: {}", chain.join(" "));
        if sx > 1 || sy > 1 {
            let _ = writeln!(out, "scale: 1 column = {sx}, 1 row = {sy}");
        }
        for row in grid.iter().rev() {
            let line: String = row.iter().collect();
            let _ = writeln!(out, "{}", line.trim_end());
        }
        out
    }

    /// SVG 1.1 drawing with vertex labels and per-segment `{L\M}` and
    /// inclination annotations.
    pub fn render_svg(&self) -> String {
        let verts = self.vertices();
        let (x_end, y_top) = (verts.last().unwrap().0, verts[0].1);
        let span = (x_end.max(y_top) + 2) as f64;
        let unit = 400.0 / span;
        let margin = 40.0;
        let size = 400.0 + 2.0 * margin;
        let px = |x: f64| margin + x * unit;
        let py = |y: f64| size - margin - y * unit;
        let mut s = String::new();
        let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let _ = writeln!(
            s,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
            px(0.0),
            py(0.0),
            px(span),
            py(0.0)
        );
        let _ = writeln!(
            s,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="gray"/>"#,
            px(0.0),
            py(0.0),
            px(0.0),
            py(span)
        );
        let mut pts = vec![format!("{},{}", px(verts[0].0 as f64), py(span))];
        pts.extend(
            verts
                .iter()
                .map(|&(x, y)| format!("{},{}", px(x as f64), py(y as f64))),
        );
        pts.push(format!(
            "{},{}",
            px(span),
            py(verts.last().unwrap().1 as f64)
        ));
        let _ = writeln!(
            s,
            r#"  <polyline points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            pts.join(" ")
        );
        for &(x, y) in &verts {
            let _ = writeln!(
                s,
                r#"  <circle cx="{}" cy="{}" r="3" fill="black"/>"#,
                px(x as f64),
                py(y as f64)
            );
            let _ = writeln!(
                s,
                r#"  <text x="{}" y="{}" font-size="11">({x},{y})</text>"#,
                px(x as f64) + 5.0,
                py(y as f64) - 5.0
            );
        }
        for (seg, pair) in self.segments.iter().zip(verts.windows(2)) {
            let mx = (pair[0].0 + pair[1].0) as f64 / 2.0;
            let my = (pair[0].1 + pair[1].1) as f64 / 2.0;
            let _ = writeln!(
                s,
                r#"  <text x="{}" y="{}" font-size="11" fill="blue">{seg} incl {}</text>"#,
                px(mx) + 6.0,
                py(my) + 12.0,
                seg.inclination()
            );
        }
        let _ = writeln!(s, "</svg>");
        s
    }
}

impl fmt::Display for NewtonDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation())
    }
}

impl BiPoly {
    /// Newton diagram of the support of `self`.
    pub fn newton_diagram(&self) -> Result<NewtonDiagram> {
        let pts: Vec<(u64, u64)> = self
            .support()
            .into_iter()
            .map(|(i, j)| (u64::from(i), u64::from(j)))
            .collect();
        NewtonDiagram::from_support(&pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Ascii,
    Svg,
}

fn cross(o: (u64, u64), a: (u64, u64), b: (u64, u64)) -> i128 {
    let (ox, oy) = (o.0 as i128, o.1 as i128);
    (a.0 as i128 - ox) * (b.1 as i128 - oy) - (a.1 as i128 - oy) * (b.0 as i128 - ox)
}

fn merge_by_inclination(mut pairs: Vec<(u64, u64)>) -> Vec<ElementarySegment> {
    pairs.retain(|&(l, m)| l > 0 && m > 0);
    pairs.sort_by(|a, b| Ratio::new(a.0, a.1).cmp(&Ratio::new(b.0, b.1)));
    let mut out: Vec<(u64, u64)> = Vec::with_capacity(pairs.len());
    for (l, m) in pairs {
        match out.last_mut() {
            Some(last) if Ratio::new(last.0, last.1) == Ratio::new(l, m) => {
                last.0 += l;
                last.1 += m;
            }
            _ => out.push((l, m)),
        }
    }
    out.into_iter()
        .map(|(l, m)| ElementarySegment::compact(l, m))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    shift: [u64; 2],
    segments: Vec<[Extent; 2]>,
}

impl Serialize for NewtonDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramRepr {
            shift: [self.shift.0, self.shift.1],
            segments: self.segments.iter().map(|g| [g.length, g.height]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for NewtonDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DiagramRepr::deserialize(d)?;
        let segs = repr
            .segments
            .iter()
            .map(|&[l, m]| ElementarySegment::with_extents(l, m))
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        Ok(NewtonDiagram::with_shift(
            (repr.shift[0], repr.shift[1]),
            segs,
        ))
    }
}
