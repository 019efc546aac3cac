class Summer:
    def sum(self, a, b, c, d, e):
        return a + b + c + d + e


def bench_main(n):
    obj = Summer()
    total = 0
    for i in range(n):
        total = total + obj.sum(i, 1, 2, 3, 4)
    return total
