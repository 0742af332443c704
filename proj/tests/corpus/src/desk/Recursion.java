// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Recursion {
  public static int fib(int n) {
    if (n < 2) return n;
    return fib(n - 1) + fib(n - 2);
  }

  public static int fibBounded(int n) { return fib(n & 15); }

  public static int gcd(int a, int b) { return b == 0 ? a : gcd(b, a % b); }

  public static long power(long base, int exp) {
    if (exp <= 0) return 1L;
    long half = power(base, exp / 2);
    return (exp & 1) == 0 ? half * half : half * half * base;
  }

  public static int ackermann(int m, int n) {
    if (m == 0) return n + 1;
    if (n == 0) return ackermann(m - 1, 1);
    return ackermann(m - 1, ackermann(m, n - 1));
  }

  public static int smallAckermann(int m, int n) { return ackermann(m & 1, n & 7); }

  public static boolean isEven(int n) { return n == 0 || isOdd(n - 1); }

  public static boolean isOdd(int n) { return n != 0 && isEven(n - 1); }

  public static boolean parity(int n) { return isEven(n & 63); }
}
