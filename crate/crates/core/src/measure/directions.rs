//! Direction grids on the unit circle and sphere.

use std::collections::HashMap;
use std::f64::consts::PI;

/// Normals `(cos θ, sin θ)` for `θ = jπ/count`, `j = 0..count`.
pub fn circle_directions(count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|j| angle_direction(j as f64 * PI / count as f64))
        .collect()
}

pub fn angle_direction(theta: f64) -> Vec<f64> {
    vec![theta.cos(), theta.sin()]
}

/// Subdivided icosahedron. Vertices come in antipodal pairs.
#[derive(Debug, Clone)]
pub struct GeodesicSphere {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
}

impl GeodesicSphere {
    pub fn new(subdivisions: usize) -> Self {
        let t = (1.0 + 5f64.sqrt()) / 2.0;
        let raw = [
            [-1.0, t, 0.0],
            [1.0, t, 0.0],
            [-1.0, -t, 0.0],
            [1.0, -t, 0.0],
            [0.0, -1.0, t],
            [0.0, 1.0, t],
            [0.0, -1.0, -t],
            [0.0, 1.0, -t],
            [t, 0.0, -1.0],
            [t, 0.0, 1.0],
            [-t, 0.0, -1.0],
            [-t, 0.0, 1.0],
        ];
        let mut vertices: Vec<[f64; 3]> = raw.iter().map(normalize3).collect();
        let mut faces: Vec<[usize; 3]> = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        for _ in 0..subdivisions {
            let mut cache: HashMap<(usize, usize), usize> = HashMap::new();
            let mut midpoint = |a: usize, b: usize, vertices: &mut Vec<[f64; 3]>| {
                let key = (a.min(b), a.max(b));
                *cache.entry(key).or_insert_with(|| {
                    let (p, q) = (vertices[a], vertices[b]);
                    vertices.push(normalize3(&[p[0] + q[0], p[1] + q[1], p[2] + q[2]]));
                    vertices.len() - 1
                })
            };
            let mut next = Vec::with_capacity(faces.len() * 4);
            for &[a, b, c] in &faces {
                let ab = midpoint(a, b, &mut vertices);
                let bc = midpoint(b, c, &mut vertices);
                let ca = midpoint(c, a, &mut vertices);
                next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
            }
            faces = next;
        }
        GeodesicSphere { vertices, faces }
    }

    /// Index of each vertex's antipode.
    pub fn antipodes(&self) -> Vec<usize> {
        let key = |p: &[f64; 3]| p.map(|x| (x * 1e9).round() as i64);
        let lookup: HashMap<[i64; 3], usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, p)| (key(p), i))
            .collect();
        self.vertices
            .iter()
            .map(|p| lookup[&key(&[-p[0], -p[1], -p[2]])])
            .collect()
    }

    /// Mean angular edge length.
    pub fn spacing(&self) -> f64 {
        let total: f64 = self
            .faces
            .iter()
            .map(|&[a, b, _]| {
                dot3(&self.vertices[a], &self.vertices[b])
                    .clamp(-1.0, 1.0)
                    .acos()
            })
            .sum();
        total / self.faces.len() as f64
    }
}

/// Canonical half of `±u`: last nonzero coordinate positive.
pub fn in_upper_hemisphere(u: &[f64]) -> bool {
    u.iter()
        .rev()
        .find(|x| **x != 0.0)
        .is_some_and(|x| *x > 0.0)
}

pub fn normalize3(p: &[f64; 3]) -> [f64; 3] {
    let n = dot3(p, p).sqrt();
    [p[0] / n, p[1] / n, p[2] / n]
}

pub fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross3(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosphere_counts() {
        let s = GeodesicSphere::new(4);
        assert_eq!(s.vertices.len(), 2562);
        assert_eq!(s.faces.len(), 5120);
        let upper = s
            .vertices
            .iter()
            .filter(|v| in_upper_hemisphere(&v[..]))
            .count();
        assert!(upper >= 1000, "{upper}");
        let anti = s.antipodes();
        for (i, &j) in anti.iter().enumerate() {
            assert_eq!(anti[j], i);
            assert_ne!(i, j);
        }
        for v in &s.vertices {
            assert!((dot3(v, v) - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn circle_grid() {
        let d = circle_directions(4);
        assert_eq!(d.len(), 4);
        assert!((d[2][0]).abs() < 1e-15 && (d[2][1] - 1.0).abs() < 1e-15);
    }
}
