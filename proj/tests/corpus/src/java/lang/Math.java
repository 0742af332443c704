// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public final class Math {
  public static final double PI = 3.141592653589793;
  public static final double E = 2.718281828459045;

  private Math() {}

  public static int abs(int a) { return a < 0 ? -a : a; }

  public static long abs(long a) { return a < 0 ? -a : a; }

  public static double abs(double a) { return a <= 0.0 ? 0.0 - a : a; }

  public static int max(int a, int b) { return a >= b ? a : b; }

  public static int min(int a, int b) { return a <= b ? a : b; }

  public static long max(long a, long b) { return a >= b ? a : b; }

  public static long min(long a, long b) { return a <= b ? a : b; }

  public static double max(double a, double b) { return a >= b ? a : b; }

  public static double min(double a, double b) { return a <= b ? a : b; }

  public static int floorDiv(int x, int y) {
    int q = x / y;
    if ((x % y != 0) && ((x ^ y) < 0)) q--;
    return q;
  }

  public static int floorMod(int x, int y) { return x - floorDiv(x, y) * y; }

  public static double sqrt(double x) {
    if (x < 0.0) return 0.0 / 0.0;
    if (x == 0.0) return 0.0;
    double g = x > 1.0 ? x / 2.0 : 1.0;
    for (int i = 0; i < 60; i++) {
      double next = 0.5 * (g + x / g);
      if (next == g) break;
      g = next;
    }
    return g;
  }

  public static long pow(long base, int exp) {
    long r = 1;
    while (exp > 0) {
      if ((exp & 1) != 0) r *= base;
      base *= base;
      exp >>= 1;
    }
    return r;
  }

  public static double floor(double a) {
    long t = (long) a;
    double d = t;
    return d > a ? d - 1.0 : d;
  }
}
