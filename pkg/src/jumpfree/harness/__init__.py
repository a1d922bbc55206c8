"""Experiment harness: configs, generators, property suites, CLI."""
