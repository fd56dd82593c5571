"""Traces with head-based sampling, scraped metric series and the cpu cost ledger."""
