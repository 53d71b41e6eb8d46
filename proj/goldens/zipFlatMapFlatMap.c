/* pipeline: zipFlatMapFlatMap, seed: 0 */
#include <stdint.h>
#include <stdio.h>
#include <stdbool.h>

int64_t fn(const int * a1, int n1, const int * a2, int n2){
  int64_t v_1 = 0;
  int v_2 = 2 * n1;
  int v_3 = 0;
  int v_4 = 0;
  int v_5 = 1;
  int v_6 = 0;
  int v_7 = 0;
  while (((v_2 > 0) && (v_5 != 0)) && (v_4 < n2))
  {
    int const t_8 = a2[v_4];
    int v_9 = 0;
    while ((v_9 < n1) && ((v_2 > 0) && (v_5 != 0)))
    {
      int const t_10 = a1[v_9];
      int const t_11 = t_10 - t_8;
      v_5 = v_5 + 2;
      while ((v_5 & 2) != 0)
      {
        if (v_5 == 3)
        {
          if (v_3 < n1)
          {
            int const t_12 = a1[v_3];
            v_6 = t_12;
            v_7 = 0;
            v_5 = 7;
            v_3++;
          }
          else
          {
            v_5 = 0;
          }
        }
        if (v_5 == 7)
        {
          if (v_7 < n2)
          {
            int const t_13 = a2[v_7];
            int const t_14 = t_13 * v_6;
            v_2--;
            v_1 = v_1 + (t_14 + t_11);
            v_5 = 5;
            v_7++;
          }
          else
          {
            v_5 = 3;
          }
        }
      }
      v_9++;
    }
    v_4++;
  }
  return v_1;
}
