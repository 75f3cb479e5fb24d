# Unit tests package for lamroot
