//! Shared inputs for the benchmark targets: catalog fixtures and a couple of
//! composites large enough to exercise the verification cores.

use gmat_core::construct::plugin_double;
use gmat_core::*;

pub fn gh20() -> GMatrix {
    catalog::get("gh20").unwrap().matrix().unwrap()
}

pub fn gh7() -> GMatrix {
    catalog::get("gh7-z6-a").unwrap().matrix().unwrap()
}

pub fn brock7() -> GMatrix {
    catalog::get("brock7").unwrap().matrix().unwrap()
}

/// The order-34 doubled matrix, the largest Butson input in the suite.
pub fn bh34() -> GMatrix {
    let c = catalog::get("gw17-z3").unwrap().matrix().unwrap();
    plugin_double(&c).unwrap().0
}

/// A 49x49 Kronecker composite over the 6th roots.
pub fn bh49() -> GMatrix {
    let a = gh7();
    kronecker_compose(&a, &a).unwrap()
}
