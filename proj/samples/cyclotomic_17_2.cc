17 9
0 1 2 3 4 5 6 7 8 8 7 6 5 4 3 2 1
1 0 1 2 3 4 5 6 7 8 8 7 6 5 4 3 2
2 1 0 1 2 3 4 5 6 7 8 8 7 6 5 4 3
3 2 1 0 1 2 3 4 5 6 7 8 8 7 6 5 4
4 3 2 1 0 1 2 3 4 5 6 7 8 8 7 6 5
5 4 3 2 1 0 1 2 3 4 5 6 7 8 8 7 6
6 5 4 3 2 1 0 1 2 3 4 5 6 7 8 8 7
7 6 5 4 3 2 1 0 1 2 3 4 5 6 7 8 8
8 7 6 5 4 3 2 1 0 1 2 3 4 5 6 7 8
8 8 7 6 5 4 3 2 1 0 1 2 3 4 5 6 7
7 8 8 7 6 5 4 3 2 1 0 1 2 3 4 5 6
6 7 8 8 7 6 5 4 3 2 1 0 1 2 3 4 5
5 6 7 8 8 7 6 5 4 3 2 1 0 1 2 3 4
4 5 6 7 8 8 7 6 5 4 3 2 1 0 1 2 3
3 4 5 6 7 8 8 7 6 5 4 3 2 1 0 1 2
2 3 4 5 6 7 8 8 7 6 5 4 3 2 1 0 1
1 2 3 4 5 6 7 8 8 7 6 5 4 3 2 1 0
