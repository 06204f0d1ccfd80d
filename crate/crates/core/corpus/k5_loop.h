# single looped vertex, alpha 2, beta -1
h 1
a 0 2
b 0 0 -1
