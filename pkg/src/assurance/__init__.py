"""SRE layer: error-budget ledger, incident scenario suite and budget-aware recommendations."""
