h 2
a 0 2
a 1 -1
b 0 1 2
b 1 1 0
