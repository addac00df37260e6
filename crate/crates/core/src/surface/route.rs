//! Combinatorial routes: a properly embedded arc or closed curve recorded as
//! the sequence of directed edge crossings, with corner endpoints for arcs.
//!
//! A route is *normal* when no triangle is entered and left through the same
//! side and every terminal segment enters through the side opposite its end
//! corner. Reduction removes side bigons and slides illegal terminal
//! segments around the puncture; at the fixpoint the crossing counts are the
//! normal coordinates of the underlying isotopy class. Splicing routes at an
//! intersection point is how surgered (unicorn) arcs are built.

use super::triangulation::Triangulation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Route {
    /// `(start corner, end corner)` as `(triangle, corner)`; `None` for a
    /// closed curve.
    pub ends: Option<((usize, usize), (usize, usize))>,
    /// Directed crossings: slot `s` is crossed from its own triangle into
    /// `glue(s)`. Consecutive entries satisfy
    /// `triangle(slots[i+1]) == triangle(glue(slots[i]))`.
    pub slots: Vec<usize>,
}

impl Route {
    pub fn arc(start: (usize, usize), slots: Vec<usize>, end: (usize, usize)) -> Route {
        Route {
            ends: Some((start, end)),
            slots,
        }
    }

    pub fn curve(slots: Vec<usize>) -> Route {
        Route { ends: None, slots }
    }

    pub fn is_closed(&self) -> bool {
        self.ends.is_none()
    }

    /// The same route traversed backwards: each crossing is re-expressed
    /// from the other side of its edge.
    pub fn reversed(&self, tri: &Triangulation) -> Route {
        let slots = self
            .slots
            .iter()
            .rev()
            .map(|&s| tri.glue(s))
            .collect();
        Route {
            ends: self.ends.map(|(a, b)| (b, a)),
            slots,
        }
    }

    /// Normalize. Returns `None` when the route collapses entirely: a
    /// null-homotopic curve, or an arc that bounds (a corner-to-same-corner
    /// loop inside one triangle).
    pub fn reduce(mut self, tri: &Triangulation) -> Option<Route> {
        match self.ends {
            None => {
                loop {
                    let m = self.slots.len();
                    if m == 0 {
                        return None;
                    }
                    let mut hit = None;
                    for i in 0..m {
                        let j = (i + 1) % m;
                        if i != j && self.slots[j] == tri.glue(self.slots[i]) {
                            hit = Some((i, j));
                            break;
                        }
                    }
                    match hit {
                        Some((i, j)) => {
                            if i < j {
                                self.slots.drain(i..=j);
                            } else {
                                // wrapped pair: j = 0, i = m-1
                                self.slots.pop();
                                self.slots.remove(0);
                            }
                        }
                        None => return Some(self),
                    }
                }
            }
            Some(_) => {
                loop {
                    let (start, end) = self.ends.unwrap();
                    let m = self.slots.len();
                    // Side bigon.
                    if let Some(i) =
                        (0..m.saturating_sub(1)).find(|&i| self.slots[i + 1] == tri.glue(self.slots[i]))
                    {
                        self.slots.drain(i..=i + 1);
                        continue;
                    }
                    if m == 0 {
                        break;
                    }
                    // Terminal slide at the start.
                    let s = self.slots[0];
                    debug_assert_eq!(s / 3, start.0);
                    if s % 3 != start.1 {
                        let corner = slide_corner(tri, s, start.1);
                        self.ends = Some((corner, end));
                        self.slots.remove(0);
                        continue;
                    }
                    // Terminal slide at the end.
                    let s = *self.slots.last().unwrap();
                    let g = tri.glue(s);
                    debug_assert_eq!(g / 3, end.0);
                    if g % 3 != end.1 {
                        let corner = slide_corner(tri, g, end.1);
                        self.ends = Some((start, corner));
                        self.slots.pop();
                        continue;
                    }
                    break;
                }
                let (start, end) = self.ends.unwrap();
                if self.slots.is_empty() {
                    debug_assert_eq!(start.0, end.0);
                    if start.1 == end.1 {
                        return None;
                    }
                }
                Some(self)
            }
        }
    }

    /// Normal coordinates of the reduced route. An empty arc route is
    /// edge-parallel and gets `-1` on the hugged edge.
    pub fn weights(&self, tri: &Triangulation) -> Vec<i64> {
        let mut w = vec![0i64; tri.n_edges()];
        for &s in &self.slots {
            w[tri.edge_of_slot(s)] += 1;
        }
        if let Some((start, end)) = self.ends {
            if self.slots.is_empty() {
                let side = 3 - start.1 - end.1; // the side joining the two corners
                w[tri.edge_of_slot(3 * start.0 + side)] = -1;
            }
        }
        w
    }
}

/// Slide a terminal segment that crosses slot `s` and ends at corner
/// `corner` of `s`'s triangle (adjacent to side `s % 3`): remove the
/// crossing and report the matching corner on the other side of the edge.
fn slide_corner(tri: &Triangulation, s: usize, corner: usize) -> (usize, usize) {
    let i = s % 3;
    let g = tri.glue(s);
    let (tp, ip) = (g / 3, g % 3);
    if corner == (i + 1) % 3 {
        // Vertex at the start of `s` = end of the glued slot.
        (tp, (ip + 2) % 3)
    } else {
        debug_assert_eq!(corner, (i + 2) % 3);
        (tp, (ip + 1) % 3)
    }
}

/// Concatenate arc routes at a shared interior point: keep `a`'s first
/// `a_pieces` crossings, then continue with `b` from its `b_piece`-th piece.
/// Piece `p` of an arc route lies in a triangle after `p` crossings; the
/// caller guarantees the two pieces lie in the same triangle.
pub(crate) fn splice(a: &Route, a_pieces: usize, b: &Route, b_piece: usize) -> Route {
    let (a_start, _) = a.ends.expect("arc route");
    let (_, b_end) = b.ends.expect("arc route");
    let mut slots = a.slots[..a_pieces].to_vec();
    slots.extend_from_slice(&b.slots[b_piece..]);
    Route::arc(a_start, slots, b_end)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::canonical::canonical_surface;

    #[test]
    fn bigon_reduction_collapses() {
        let tri = canonical_surface("S_1_1").unwrap();
        // Cross an edge and come straight back: trivial loop at a corner.
        let s = 0usize;
        let r = Route::arc((0, 0), vec![3 * 0 + 0, tri.glue(0)], (0, 0));
        let red = r.reduce(&tri);
        assert!(red.is_none());
        let _ = s;
    }

    #[test]
    fn corner_to_corner_is_edge_parallel() {
        let tri = canonical_surface("S_1_1").unwrap();
        // Corners 1 and 2 of triangle 0 flank side 0.
        let r = Route::arc((0, 1), vec![], (0, 2)).reduce(&tri).unwrap();
        let w = r.weights(&tri);
        let e = tri.edge_of_slot(0);
        assert_eq!(w[e], -1);
        assert!(w.iter().filter(|&&x| x != 0).count() == 1);
    }
}
