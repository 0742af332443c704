// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk;

public class Statics {
  static Object ref;
  static int counter;
  static float scale;
  static long ticks;
  static double average;
  static byte flags;
  static boolean armed;
  static char mark;
  static short level;
  static int[] table;
  static String label;

  static {
    counter = 6 * 7;
    scale = 0.5f;
    ticks = 10000000000L;
    average = 2.5;
    flags = 3;
    armed = true;
    mark = (char) 65;
    level = 300;
    table = new int[] {1, 2, 3, 5, 8};
    label = "statics";
    ref = label;
  }

  public static int bump(int by) {
    counter += by;
    level = (short) (level + by);
    return counter;
  }

  public static long tick(long dt) {
    ticks += dt;
    return ticks;
  }

  public static float rescale(float f) {
    scale = scale * f;
    return scale;
  }

  public static double blend(double d) {
    average = (average + d) / 2.0;
    return average;
  }

  public static int flagsXor(int b) {
    flags = (byte) (flags ^ b);
    armed = !armed;
    int f = flags;
    return armed ? f : -f;
  }

  public static char nextMark() {
    mark = (char) (mark + 1);
    return mark;
  }

  public static int tableSum() {
    int s = 0;
    for (int i = 0; i < table.length; i++) s += table[i];
    return s;
  }

  public static Object swap(Object o) {
    Object old = ref;
    ref = o;
    return old;
  }

  public static boolean hasLabel() { return label != null; }
}
