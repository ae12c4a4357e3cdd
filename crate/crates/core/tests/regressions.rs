use dgares_core::regression;

fn assert_passes(name: &str) {
    let r = regression::run(name).expect("known regression");
    for c in &r.checks {
        println!("{:<5} {} {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    assert!(r.passes(), "{name} failed");
}

#[test]
fn nonunique_products() {
    assert_passes("nonunique-products");
}

#[test]
fn modified_product_table() {
    assert_passes("modified-product-table");
}

#[test]
fn obstruction_certificate() {
    assert_passes("obstruction-certificate");
}

#[test]
fn hexagon_betti() {
    assert_passes("hexagon-betti");
}

#[test]
fn strongly_generic_obstruction() {
    assert_passes("strongly-generic-obstruction");
}

#[test]
fn betti_poset_construct() {
    assert_passes("betti-poset-construct");
}

#[test]
fn scaling() {
    assert_passes("scaling");
}
