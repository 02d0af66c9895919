use crate::exactlin::Field;
use crate::{Error, Result};

use super::category::{compile_quiver, Category};
use super::presentation::{CategoryPresentation, Relation};

/// A generated example category together with how it was cut down.
#[derive(Clone, Debug)]
pub struct GeneratedCategory {
    pub presentation: CategoryPresentation,
    pub category: Category,
    /// Number of meshes whose relations were imposed.
    pub meshes: usize,
    /// Window or truncation in force, for reports.
    pub note: String,
}

fn mesh_object(p: usize, q: usize) -> String {
    format!("m{p}_{q}")
}

/// A `window x n` rectangle of the translation quiver ZA_inf, away from its
/// boundary: vertices `(p, q)` with arrows `(p,q) -> (p+1,q)` ("r") and
/// `(p,q) -> (p,q+1)` ("u"), translation `τ(p,q) = (p-1,q-1)`, and one
/// commutativity relation per mesh lying inside the window. Vertices outside
/// the rectangle are absent, so paths through them are zero.
pub fn gen_mesh_window(n: usize, window: usize, field: Field) -> Result<GeneratedCategory> {
    if n == 0 || window == 0 {
        return Err(Error::BadPresentation(
            "mesh window needs n >= 1 and window >= 1".into(),
        ));
    }
    let mut objects = Vec::new();
    for p in 0..window {
        for q in 0..n {
            objects.push(mesh_object(p, q));
        }
    }
    let refs: Vec<&str> = objects.iter().map(String::as_str).collect();
    let bound = (window - 1) + (n - 1) + 1;
    let mut pres = CategoryPresentation::new(&format!("mesh-{n}x{window}"), field, &refs, bound);
    for p in 0..window {
        for q in 0..n {
            if p + 1 < window {
                pres = pres.arrow(&format!("r{p}_{q}"), &mesh_object(p, q), &mesh_object(p + 1, q));
            }
            if q + 1 < n {
                pres = pres.arrow(&format!("u{p}_{q}"), &mesh_object(p, q), &mesh_object(p, q + 1));
            }
        }
    }
    let mut meshes = 0;
    for p in 1..window {
        for q in 1..n {
            // mesh ending at (p,q), starting at τ(p,q) = (p-1,q-1)
            let up_first = [format!("u{}_{}", p - 1, q - 1), format!("r{}_{}", p - 1, q)];
            let right_first = [format!("r{}_{}", p - 1, q - 1), format!("u{}_{}", p, q - 1)];
            let up: Vec<&str> = up_first.iter().map(String::as_str).collect();
            let right: Vec<&str> = right_first.iter().map(String::as_str).collect();
            pres = pres.relation(Relation::commutes(field, &up, &right));
            meshes += 1;
        }
    }
    let category = compile_quiver(&pres)?;
    let note = if meshes == 0 {
        format!("window {window} x {n} of ZA_inf contains no mesh; plain path category")
    } else {
        format!("window {window} x {n} of ZA_inf, {meshes} mesh relations")
    };
    Ok(GeneratedCategory {
        presentation: pres,
        category,
        meshes,
        note,
    })
}

fn tube_object(i: usize, j: usize) -> String {
    format!("t{i}_{j}")
}

/// The stable tube ZA_inf/(τ^rank) cut at quasi-length `depth`.
///
/// Vertices `(i, j)` with `i` mod `rank` and `1 <= j <= depth`; arrows
/// `a{i}_{j}: (i,j) -> (i,j+1)` and `b{i}_{j}: (i,j+1) -> (i+1,j)`. At each
/// vertex `x = (i+1, j)` the mesh from `τx = (i, j)` imposes
/// `up-path - down-path = 0`; when one of the two middle vertices is missing
/// (the mouth, or the deleted level `depth + 1`) the remaining path is zero.
pub fn gen_stable_tube(rank: usize, depth: usize, field: Field) -> Result<GeneratedCategory> {
    if rank == 0 || depth == 0 {
        return Err(Error::BadPresentation("tube needs rank >= 1 and depth >= 1".into()));
    }
    let mut objects = Vec::new();
    for j in 1..=depth {
        for i in 0..rank {
            objects.push(tube_object(i, j));
        }
    }
    let refs: Vec<&str> = objects.iter().map(String::as_str).collect();
    // Nonzero paths in the truncated tube are shorter than `depth`; the
    // generous bound keeps the truncation ideal invisible.
    let bound = 2 * depth + 2;
    let mut pres = CategoryPresentation::new(&format!("tube-r{rank}-d{depth}"), field, &refs, bound);
    for j in 1..depth {
        for i in 0..rank {
            pres = pres.arrow(&format!("a{i}_{j}"), &tube_object(i, j), &tube_object(i, j + 1));
            pres = pres.arrow(
                &format!("b{i}_{j}"),
                &tube_object(i, j + 1),
                &tube_object((i + 1) % rank, j),
            );
        }
    }
    let mut meshes = 0;
    for j in 1..=depth {
        for i in 0..rank {
            let next = (i + 1) % rank;
            let up = (j < depth).then(|| [format!("a{i}_{j}"), format!("b{i}_{j}")]);
            let down = (j >= 2).then(|| [format!("b{i}_{}", j - 1), format!("a{next}_{}", j - 1)]);
            let relation = match (&up, &down) {
                (Some(u), Some(d)) => {
                    Relation::commutes(field, &[u[0].as_str(), u[1].as_str()], &[d[0].as_str(), d[1].as_str()])
                }
                (Some(u), None) => Relation::zero_path(field, &[u[0].as_str(), u[1].as_str()]),
                (None, Some(d)) => Relation::zero_path(field, &[d[0].as_str(), d[1].as_str()]),
                (None, None) => continue,
            };
            pres = pres.relation(relation);
            meshes += 1;
        }
    }
    let category = compile_quiver(&pres)?;
    let note = format!("stable tube of rank {rank} truncated at quasi-length {depth}");
    Ok(GeneratedCategory {
        presentation: pres,
        category,
        meshes,
        note,
    })
}

/// Names of the mouth (quasi-length 1) objects of a generated tube.
pub fn tube_mouth(rank: usize) -> Vec<String> {
    (0..rank).map(|i| tube_object(i, 1)).collect()
}
