"""Simulated system under experimentation: topology, workload and the discrete-event engine."""
