// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.util;

// Open-addressing table from String keys to Object values.
public class StringMap {
  private String[] keys = new String[8];
  private Object[] values = new Object[8];
  private int size;

  private int slot(String key, String[] table) {
    int i = key.hashCode() & (table.length - 1);
    while (table[i] != null && !table[i].equals(key)) i = (i + 1) & (table.length - 1);
    return i;
  }

  public Object put(String key, Object value) {
    if (key == null) throw new NullPointerException("key");
    if (size * 2 >= keys.length) grow();
    int i = slot(key, keys);
    Object old = values[i];
    if (keys[i] == null) size++;
    keys[i] = key;
    values[i] = value;
    return old;
  }

  public Object get(String key) {
    int i = slot(key, keys);
    return keys[i] == null ? null : values[i];
  }

  public int size() { return size; }

  private void grow() {
    String[] oldKeys = keys;
    Object[] oldValues = values;
    keys = new String[oldKeys.length * 2];
    values = new Object[oldKeys.length * 2];
    for (int j = 0; j < oldKeys.length; j++) {
      if (oldKeys[j] == null) continue;
      int i = slot(oldKeys[j], keys);
      keys[i] = oldKeys[j];
      values[i] = oldValues[j];
    }
  }

  public static int exercise(int n) {
    StringMap m = new StringMap();
    for (int i = 0; i < (n & 15); i++) m.put(Integer.toString(i * 7), new Integer(i));
    m.put("seven", "7");
    Object hit = m.get("14");
    Object miss = m.get("nope");
    return m.size() * 100 + (hit == null ? 0 : ((Integer) hit).intValue()) + (miss == null ? 1 : 2);
  }
}
