"""PDAs, action trees, the P(n,k) family, and PDA -> CFG -> Parikh FSA conversions."""
