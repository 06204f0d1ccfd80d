h 3
a 0 0
a 1 2
a 2 -1
b 0 1 -1
b 1 2 2
b 0 0 0
