//! Restricted gift wrapping on a polygon with an invisible decoy vertex.
//!
//! From the supporting vertex `v`, an unrestricted wrap would pick the decoy
//! `u`. The restricted wrap only looks at the sleeve ahead of `v` and finds
//! the true next path vertex `w`.

use geodesic_cw::delaunay_cw::{restricted_gift_wrap, Diagonal};
use geodesic_cw::fixtures;

fn main() -> Result<(), geodesic_cw::Error> {
    let f = fixtures::decoy();
    let poly = &f.polygon;
    let tri = [9, f.v, f.w];
    println!(
        "v = {}, w = {}, decoy u = {}",
        poly.vertex(f.v),
        poly.vertex(f.w),
        poly.vertex(f.u)
    );

    let (cusp, emitted, _) = restricted_gift_wrap(poly, f.v, tri, None, f.t)?;
    let names: Vec<String> = emitted.iter().map(|p| p.to_string()).collect();
    println!("wrapping to t emits [{}], ends at {cusp}", names.join(", "));

    let target = Diagonal { u: 8, v: f.w };
    let (cusp, emitted, cone) = restricted_gift_wrap(poly, f.v, tri, Some(target), f.t)?;
    println!(
        "wrapping to diagonal {}-{} emits {} points, cusp {cusp}, cone {} .. {}",
        target.u,
        target.v,
        emitted.len(),
        cone.right,
        cone.left
    );
    Ok(())
}
