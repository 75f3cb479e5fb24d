# Test utility functions for lamroot tests
