"""Reference-frame-independent QKD: invariants, key-rate bounds and photonic circuit checks."""
