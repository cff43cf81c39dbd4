//! Zero-level contour extraction from a scalar grid by marching squares,
//! with segment chaining into polylines.

/// A polyline in (row-axis value, col-axis value) coordinates.
pub type Polyline = Vec<(f64, f64)>;

fn interp(a: f64, b: f64, va: f64, vb: f64) -> f64 {
    // linear zero crossing between grid values va and vb
    let t = va / (va - vb);
    a + t * (b - a)
}

/// Extract the zero-level contour of `value[r * cols + c]` sampled at
/// coordinates `row_coords[r]`, `col_coords[c]`.
pub fn zero_contour(
    row_coords: &[f64],
    col_coords: &[f64],
    value: &[f64],
) -> Vec<Polyline> {
    let rows = row_coords.len();
    let cols = col_coords.len();
    let at = |r: usize, c: usize| value[r * cols + c];
    let mut segments: Vec<((f64, f64), (f64, f64))> = Vec::new();

    for r in 0..rows.saturating_sub(1) {
        for c in 0..cols.saturating_sub(1) {
            // corner values, counterclockwise from (r, c)
            let v = [at(r, c), at(r, c + 1), at(r + 1, c + 1), at(r + 1, c)];
            let (r0, r1) = (row_coords[r], row_coords[r + 1]);
            let (c0, c1) = (col_coords[c], col_coords[c + 1]);
            let mut crossings: Vec<(f64, f64)> = Vec::new();
            // edges: bottom (r0, c0->c1), right (c1, r0->r1), top (r1, c1->c0), left (c0, r1->r0)
            let edges = [
                ((r0, c0), (r0, c1), v[0], v[1]),
                ((r0, c1), (r1, c1), v[1], v[2]),
                ((r1, c1), (r1, c0), v[2], v[3]),
                ((r1, c0), (r0, c0), v[3], v[0]),
            ];
            for (p, q, vp, vq) in edges {
                // zero corners count as positive so every cell boundary sees
                // an even number of sign changes
                if (vp >= 0.0) != (vq >= 0.0) {
                    let rr = interp(p.0, q.0, vp, vq);
                    let cc = interp(p.1, q.1, vp, vq);
                    crossings.push((rr, cc));
                }
            }
            // 0, 2 or 4 crossings; pair them in order (the ambiguous saddle
            // case pairs adjacent crossings, which keeps segments consistent)
            let mut i = 0;
            while i + 1 < crossings.len() {
                segments.push((crossings[i], crossings[i + 1]));
                i += 2;
            }
        }
    }
    chain_segments(segments)
}

fn key(p: (f64, f64)) -> (i64, i64) {
    // quantize endpoints to merge shared cell-edge crossings
    ((p.0 * 1e9).round() as i64, (p.1 * 1e9).round() as i64)
}

fn chain_segments(segments: Vec<((f64, f64), (f64, f64))>) -> Vec<Polyline> {
    use std::collections::BTreeMap;
    // contours tangent to a grid node emit zero-length segments; they carry
    // no path information and would strand as spurious two-point lines
    let segments: Vec<((f64, f64), (f64, f64))> = segments
        .into_iter()
        .filter(|(a, b)| key(*a) != key(*b))
        .collect();
    let mut adjacency: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
    for (i, (a, b)) in segments.iter().enumerate() {
        adjacency.entry(key(*a)).or_default().push(i);
        adjacency.entry(key(*b)).or_default().push(i);
    }
    let mut used = vec![false; segments.len()];
    let mut polylines = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        used[start] = true;
        let (a, b) = segments[start];
        let mut line = vec![a, b];
        // extend forward from the tail
        loop {
            let tail = *line.last().unwrap();
            let Some(cands) = adjacency.get(&key(tail)) else { break };
            let next = cands.iter().copied().find(|&i| !used[i]);
            let Some(i) = next else { break };
            used[i] = true;
            let (p, q) = segments[i];
            line.push(if key(p) == key(tail) { q } else { p });
        }
        // extend backward from the head
        loop {
            let head = line[0];
            let Some(cands) = adjacency.get(&key(head)) else { break };
            let next = cands.iter().copied().find(|&i| !used[i]);
            let Some(i) = next else { break };
            used[i] = true;
            let (p, q) = segments[i];
            line.insert(0, if key(p) == key(head) { q } else { p });
        }
        polylines.push(line);
    }
    polylines
}
