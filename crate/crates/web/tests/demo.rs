use maskmark_web::{scene_names, sweep, Demo};

#[test]
fn embed_attack_extract() {
    assert_eq!(scene_names().split(',').count(), 5);
    let d = Demo::new(0, "1010 0101 1010 0101", 0.3, 0.05).unwrap_or_else(|_| panic!("embed"));
    assert_eq!(d.marked_rgba().len(), 512 * 512 * 4);
    assert_eq!(d.map_rgba().len(), 512 * 512 * 4);
    assert!(d.psnr() > 40.0);
    assert_eq!(d.blocks().split(',').count(), 5);
    let out = d.attack("jpeg", 80.0, 0).unwrap_or_else(|_| panic!("attack"));
    assert_eq!(out.bits(), "1010010110100101");
    assert_eq!(out.ber(), 0.0);
    assert!(out.ones().iter().all(|&n| n == 0 || n == 15));
}

#[test]
fn sweep_decreases() {
    let v = sweep(1, vec![0.05, 0.3, 1.0], 0.05).unwrap_or_else(|_| panic!("sweep"));
    assert_eq!(v.len(), 6);
    assert!(v[0] >= v[2] && v[2] >= v[4]);
    assert!(v[1] >= v[3] && v[3] >= v[5]);
}
