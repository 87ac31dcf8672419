//! Marching-squares level sets on a rectilinear grid, with linear
//! interpolation along cell edges and saddle cells resolved by the cell-centre
//! average.

use std::collections::HashMap;

/// Scalar samples on a rectilinear grid, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    pub rows: Vec<f64>,
    pub cols: Vec<f64>,
    pub values: Vec<f64>,
}

impl Grid {
    pub fn new(rows: Vec<f64>, cols: Vec<f64>, values: Vec<f64>) -> Self {
        assert_eq!(rows.len() * cols.len(), values.len(), "grid shape mismatch");
        Self { rows, cols, values }
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.cols.len() + j]
    }
}

/// A traced contour as (row coordinate, column coordinate) points. Closed
/// curves repeat their first point at the end; open ones terminate on the
/// grid boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    pub points: Vec<(f64, f64)>,
    pub closed: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Edge {
    /// Between (i, j) and (i, j+1).
    Row(usize, usize),
    /// Between (i, j) and (i+1, j).
    Col(usize, usize),
}

fn crossing(grid: &Grid, edge: Edge, level: f64) -> (f64, f64) {
    let (a, b, (r0, c0), (r1, c1)) = match edge {
        Edge::Row(i, j) => (
            grid.value(i, j),
            grid.value(i, j + 1),
            (grid.rows[i], grid.cols[j]),
            (grid.rows[i], grid.cols[j + 1]),
        ),
        Edge::Col(i, j) => (
            grid.value(i, j),
            grid.value(i + 1, j),
            (grid.rows[i], grid.cols[j]),
            (grid.rows[i + 1], grid.cols[j]),
        ),
    };
    let t = ((level - a) / (b - a)).clamp(0.0, 1.0);
    (r0 + t * (r1 - r0), c0 + t * (c1 - c0))
}

fn segments(grid: &Grid, level: f64) -> Vec<(Edge, Edge)> {
    let mut out = Vec::new();
    let (nr, nc) = (grid.rows.len(), grid.cols.len());
    for i in 0..nr.saturating_sub(1) {
        for j in 0..nc.saturating_sub(1) {
            let v = [
                grid.value(i, j),
                grid.value(i, j + 1),
                grid.value(i + 1, j + 1),
                grid.value(i + 1, j),
            ];
            let above = v.map(|x| x > level);
            let top = Edge::Row(i, j);
            let right = Edge::Col(i, j + 1);
            let bottom = Edge::Row(i + 1, j);
            let left = Edge::Col(i, j);

            let crossed: Vec<Edge> = [
                (above[0] != above[1], top),
                (above[1] != above[2], right),
                (above[2] != above[3], bottom),
                (above[3] != above[0], left),
            ]
            .into_iter()
            .filter_map(|(c, e)| c.then_some(e))
            .collect();

            match crossed.len() {
                2 => out.push((crossed[0], crossed[1])),
                4 => {
                    let centre = 0.25 * v.iter().sum::<f64>();
                    if (centre > level) == above[0] {
                        out.push((top, right));
                        out.push((bottom, left));
                    } else {
                        out.push((left, top));
                        out.push((right, bottom));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

/// Traces every contour of `grid` at `level`, in deterministic order.
pub fn level_set(grid: &Grid, level: f64) -> Vec<Polyline> {
    let segs = segments(grid, level);
    let mut at_edge: HashMap<Edge, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segs.iter().enumerate() {
        at_edge.entry(*a).or_default().push(k);
        at_edge.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segs.len()];

    let trace = |start_seg: usize, start_edge: Edge, used: &mut Vec<bool>| -> Polyline {
        let mut edges = vec![start_edge];
        let mut seg = start_seg;
        let mut edge = start_edge;
        loop {
            used[seg] = true;
            let (a, b) = segs[seg];
            edge = if a == edge { b } else { a };
            edges.push(edge);
            match at_edge[&edge].iter().find(|&&s| !used[s]) {
                Some(&next) => seg = next,
                None => break,
            }
        }
        let closed = edges.len() > 2 && edges.first() == edges.last();
        Polyline {
            points: edges.iter().map(|&e| crossing(grid, e, level)).collect(),
            closed,
        }
    };

    let mut lines = Vec::new();
    // open curves start from an edge touched by a single segment
    for k in 0..segs.len() {
        if used[k] {
            continue;
        }
        let (a, b) = segs[k];
        if at_edge[&a].len() == 1 {
            lines.push(trace(k, a, &mut used));
        } else if at_edge[&b].len() == 1 {
            lines.push(trace(k, b, &mut used));
        }
    }
    for k in 0..segs.len() {
        if !used[k] {
            lines.push(trace(k, segs[k].0, &mut used));
        }
    }
    lines
}
