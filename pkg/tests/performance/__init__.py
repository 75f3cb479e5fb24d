# Performance tests package for lamroot
