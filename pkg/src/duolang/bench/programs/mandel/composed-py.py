<%php
function iterate(&$re, &$im, &$re2, &$im2, $rec, $imc, $maxiter) {
  $color = 0;
  while ($color < $maxiter && $re2 + $im2 < 4.0) {
    $im = 2.0 * $re * $im + $imc;
    $re = $re2 - $im2 + $rec;
    $re2 = $re * $re;
    $im2 = $im * $im;
    $color = $color + 1;
  }
  return $color;
}
%>


def mandel(w, h, maxiter):
    buf = ""
    for y in range(h):
        imc = -1.2 + 2.4 * y / h
        for x in range(w):
            rec = -2.0 + 3.0 * x / w
            re = PHPRef(0.0)
            im = PHPRef(0.0)
            re2 = PHPRef(0.0)
            im2 = PHPRef(0.0)
            color = iterate(re, im, re2, im2, rec, imc, maxiter)
            if color == maxiter:
                buf = buf + "#"
            else:
                buf = buf + " "
        buf = buf + "\n"
    return len(buf) * 100000 + buf.count("#")


def bench_main(n):
    return mandel(3 * n, n, 50)
