// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.shapes;

public interface Scalable {
  int FACTOR = 2;

  Shape scaled(double by);
}
