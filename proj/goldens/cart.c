/* pipeline: cart, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2){
  int64_t v_1 = 0;
  int v_2 = 0;
  while (v_2 < n1)
  {
    int const t_3 = a1[v_2];
    int v_4 = 0;
    while (v_4 < n2)
    {
      int const t_5 = a2[v_4];
      int const t_6 = t_3 * t_5;
      v_1 = v_1 + t_6;
      v_4++;
    }
    v_2++;
  }
  return v_1;
}
