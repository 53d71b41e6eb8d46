/* pipeline: sumOfSquaresEven, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1){
  int64_t v_1 = 0;
  int v_2 = 0;
  while (v_2 < n1)
  {
    int const t_3 = a1[v_2];
    if ((t_3 % 2) == 0)
    {
      int const t_4 = t_3 * t_3;
      v_1 = v_1 + t_4;
    }
    v_2++;
  }
  return v_1;
}
