<%php
function swap(&$x, &$y) {
  $tmp = $x;
  $x = $y;
  $y = $tmp;
}
%>


def bench_main(n):
    a = PHPRef(1)
    b = PHPRef(2)
    total = 0
    for i in range(n):
        swap(a, b)
        total = total + a.deref()
    return total
